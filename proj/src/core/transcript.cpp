#include "mafia/core/transcript.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mafia {

using nlohmann::json;

std::string Transcript::to_jsonl() const {
    std::ostringstream out;
    json header;
    json cfg;
    to_json(cfg, config);
    header["type"] = "header";
    header["format"] = "mafia-transcript";
    header["version"] = 1;
    header["config"] = cfg;
    json roles_j = json::array();
    for (Role r : roles) roles_j.push_back(to_string(r));
    header["roles"] = roles_j;
    header["seats"] = seat_specs;
    out << header.dump() << '\n';

    for (const Event& e : events) {
        json je;
        to_json(je, e);
        out << je.dump() << '\n';
    }

    json result;
    result["type"] = "result";
    result["winner"] = winner ? json(to_string(*winner)) : json(nullptr);
    out << result.dump() << '\n';
    return out.str();
}

Transcript Transcript::from_jsonl(const std::string& text) {
    Transcript t;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        if (j.contains("type")) {
            const std::string type = j.at("type").get<std::string>();
            if (type == "header") {
                from_json(j.at("config"), t.config);
                t.roles.clear();
                for (const auto& r : j.at("roles")) {
                    t.roles.push_back(role_from_string(r.get<std::string>()));
                }
                if (j.contains("seats")) {
                    t.seat_specs = j.at("seats").get<std::vector<std::string>>();
                }
                have_header = true;
            } else if (type == "result") {
                if (!j.at("winner").is_null()) {
                    t.winner = alignment_from_string(j.at("winner").get<std::string>());
                }
            }
        } else {
            Event e;
            from_json(j, e);
            t.events.push_back(std::move(e));
        }
    }
    if (!have_header) {
        throw RuleError(RuleError::Code::BadArgument, "transcript missing header line");
    }
    return t;
}

void write_transcript(const Transcript& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << t.to_jsonl();
}

Transcript read_transcript(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return Transcript::from_jsonl(buf.str());
}

std::string ReplayReport::summary() const {
    if (ok) return "replay ok";
    std::ostringstream out;
    out << "replay diverged (" << divergences.size() << " issue(s)):";
    for (const auto& d : divergences) {
        out << "\n  seq " << d.seq << ": " << d.note;
    }
    return out.str();
}

namespace {

std::string describe(const Event& e) {
    json j;
    to_json(j, e);
    return j.dump();
}

} // namespace

std::optional<GameState> rebuild_state(const Transcript& t, ReplayReport* report_out) {
    ReplayReport local;
    ReplayReport& report = report_out ? *report_out : local;

    std::optional<GameState> game_opt;
    try {
        game_opt = GameState::with_roles(t.config, t.roles);
    } catch (const RuleError& e) {
        report.divergences.push_back({-1, std::string("setup failed: ") + e.what()});
        return std::nullopt;
    }
    GameState& game = *game_opt;

    std::size_t i = 0;
    const auto& recorded = t.events;
    while (i < recorded.size()) {
        if (i < game.events().size()) {
            if (!same_event(game.events()[i], recorded[i])) {
                report.divergences.push_back(
                    {recorded[i].seq, "event mismatch: expected " + describe(recorded[i]) +
                                          ", engine produced " + describe(game.events()[i])});
                return std::nullopt;
            }
            ++i;
            continue;
        }
        // The engine is caught up; the next recorded event must be an input
        // (replayed verbatim) or a resolution trigger.
        const Event& next = recorded[i];
        try {
            switch (next.kind) {
            case EventKind::NightActionSubmitted: {
                const auto& p = std::get<ev::NightActionSubmitted>(next.payload);
                game.submit_night_action(p.actor, NightAction{p.action, p.target});
                break;
            }
            case EventKind::StatementMade: {
                const auto& p = std::get<ev::StatementMade>(next.payload);
                game.record_statement(p.speaker, p.text, p.acts);
                break;
            }
            case EventKind::VoteCast: {
                const auto& p = std::get<ev::VoteCast>(next.payload);
                game.cast_vote(p.voter, p.target);
                break;
            }
            case EventKind::ProtectionApplied:
            case EventKind::InvestigationResult:
            case EventKind::NightResolved:
                game.resolve_night();
                break;
            case EventKind::VotesResolved:
                game.tally_votes();
                break;
            default:
                report.divergences.push_back(
                    {next.seq, "recorded event could not be reproduced: " + describe(next)});
                return std::nullopt;
            }
        } catch (const RuleError& e) {
            report.divergences.push_back(
                {next.seq, std::string("engine rejected recorded input: ") + e.what()});
            return std::nullopt;
        }
    }

    if (game.events().size() != recorded.size()) {
        report.divergences.push_back(
            {static_cast<int>(recorded.size()),
             "engine produced " + std::to_string(game.events().size()) + " events, transcript has " +
                 std::to_string(recorded.size())});
        return std::nullopt;
    }
    return game_opt;
}

ReplayReport replay_transcript(const Transcript& t) {
    ReplayReport report;
    auto state = rebuild_state(t, &report);
    if (!state) return report;

    if (state->phase().is_ended()) report.replayed_winner = state->phase().winner;
    if (t.winner != report.replayed_winner) {
        report.divergences.push_back({-1, "recorded result does not match replayed result"});
        return report;
    }

    report.ok = true;
    return report;
}

} // namespace mafia
