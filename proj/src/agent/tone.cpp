#include "mafia/agent/tone.hpp"

#include <sstream>

namespace mafia::agent {

std::string to_string(Tone t) {
    switch (t) {
    case Tone::AggressivePressuring: return "aggressive_pressuring";
    case Tone::WithdrawingPassive: return "withdrawing_passive";
    case Tone::LogicallyAnchoring: return "logically_anchoring";
    case Tone::ContrarianSkeptical: return "contrarian_skeptical";
    }
    return "logically_anchoring";
}

bool lylo_state(const Observation& obs) {
    int dead_mafia = 0;
    int dead_total = 0;
    for (const auto& e : obs.public_events) {
        if (const auto* p = e.get<ev::PlayerEliminated>()) {
            ++dead_total;
            if (p->revealed_role == Role::Mafia) ++dead_mafia;
        }
    }
    (void)dead_total;
    const int mafia = obs.config.count(Role::Mafia) - dead_mafia;
    const int village = static_cast<int>(obs.living.size()) - mafia;
    // One mislynch plus the following night kill reaches parity.
    return mafia > 0 && mafia < village && mafia >= village - 2;
}

ToneProfile select_tone(const Review& review, const mem::RevacMemory& memory,
                        const ToneContext& ctx, const ToneConfig& cfg) {
    const auto& graph = memory.graph();
    const auto ranking = graph.suspicion_ranking();

    auto score_of = [&](int player) {
        for (const auto& e : ranking) {
            if (e.player == player) return e.score;
        }
        return 0.0;
    };

    // (1) Deflect when the table is on us.
    for (int i = 0; i < cfg.self_preserve_top_k && i < static_cast<int>(ranking.size()); ++i) {
        if (ranking[static_cast<std::size_t>(i)].player == ctx.owner &&
            ranking[static_cast<std::size_t>(i)].score > 0.0) {
            std::ostringstream why;
            why << "own suspicion score " << ranking[static_cast<std::size_t>(i)].score
                << " is within the top " << cfg.self_preserve_top_k;
            return {Tone::WithdrawingPassive,
                    {"Lower your profile; do not push any accusation this turn.",
                     "Sound cooperative and a little confused; ask clarifying questions.",
                     "Do not repeat your claim unless directly challenged."},
                    why.str()};
        }
    }

    // (2) Anchor on a confirmed fact about someone still alive.
    for (const auto& f : memory.confirmed_facts()) {
        if (f.kind == mem::FactKind::InvestigationCheck && f.alignment == Alignment::Mafia &&
            f.subject >= 0 && f.subject < graph.size() && graph.node(f.subject).alive) {
            std::ostringstream why;
            why << "confirmed night check implicates living P" << f.subject;
            return {Tone::LogicallyAnchoring,
                    {"Restate the confirmed fact first and keep the discussion on it.",
                     "Propose one concrete, rational vote.",
                     "Dismiss side arguments as distractions until the fact is addressed."},
                    why.str()};
        }
    }

    // (3) Push back on an evidence-free pile-on.
    for (const auto& e : ranking) {
        if (e.player == ctx.owner) continue;
        auto pressure = graph.pressure_score(e.player);
        if (pressure.score < cfg.contrarian_pressure_threshold) continue;
        bool supported = false;
        for (const auto& f : memory.confirmed_facts()) {
            if (f.subject == e.player && f.alignment == Alignment::Mafia) supported = true;
        }
        for (const auto& c : review.contradictions) {
            if (c.subject == e.player) supported = true;
            for (int o : c.others) {
                if (o == e.player) supported = true;
            }
        }
        if (!supported) {
            std::ostringstream why;
            why << "P" << e.player << " carries pressure " << pressure.score
                << " with no confirmed fact or contradiction behind it";
            return {Tone::ContrarianSkeptical,
                    {"Question the basis of the current consensus.",
                     "Ask explicitly what evidence exists against the pile-on target.",
                     "Refuse to join the bandwagon this turn."},
                    why.str()};
        }
    }

    // (4) Press a suspect the table has not defended.
    for (const auto& e : ranking) {
        if (e.player == ctx.owner) continue;
        auto pressure = graph.pressure_score(e.player);
        if (pressure.score > 0.0 && graph.defense_in_weight(e.player) < cfg.aggressive_defense_max) {
            std::ostringstream why;
            why << "P" << e.player << " is suspected (pressure " << pressure.score
                << ") and weakly defended (defense " << graph.defense_in_weight(e.player) << ")";
            return {Tone::AggressivePressuring,
                    {"Demand an immediate full claim from the suspect.",
                     "State plainly that silence or evasion confirms guilt.",
                     "Commit your vote conditionally on their answer."},
                    why.str()};
        }
        break; // only the top suspect is pressed
    }

    // (5) Default: keep the table organised.
    std::string why = score_of(ctx.owner) > 0.0 ? "no stronger signal; staying structured"
                                                : "no graph signal yet";
    return {Tone::LogicallyAnchoring,
            {"Summarise what is actually known so far.",
             "Invite missing claims in seat order.",
             "Keep statements short and factual."},
            why};
}

} // namespace mafia::agent
