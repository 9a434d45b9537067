#include "mafia/agent/review.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace mafia::agent {

namespace {

struct Knowledge {
    std::map<int, Role> forced;              // exact role known to the owner
    std::set<int> village_only;              // mafia ruled out (e.g. clean check)
    std::map<int, double> suspicion;         // graph score per living player
};

Knowledge gather_knowledge(const Observation& obs, const mem::RevacMemory& memory,
                           const ReviewConfig& cfg) {
    Knowledge k;
    k.forced[obs.viewer] = obs.viewer_role;
    for (int partner : obs.mafia_partners) k.forced[partner] = Role::Mafia;
    if (obs.viewer_role == Role::Mafia) {
        // The team is fully known, so everyone else is village-aligned.
        for (int p = 0; p < obs.num_players; ++p) {
            if (!k.forced.count(p)) k.village_only.insert(p);
        }
    }

    if (cfg.use_memory) {
        for (const auto& [player, role] : memory.revealed_roles()) k.forced[player] = role;
        for (const auto& f : memory.confirmed_facts()) {
            if (f.kind == mem::FactKind::InvestigationCheck) {
                if (f.alignment == Alignment::Mafia) {
                    k.forced[f.subject] = Role::Mafia;
                } else {
                    k.village_only.insert(f.subject);
                }
            }
        }
        for (const auto& entry : memory.graph().suspicion_ranking()) {
            k.suspicion[entry.player] = entry.score;
        }
    } else {
        // Memoryless lineage: public reveals are still visible in the raw
        // observation.
        for (const auto& e : obs.public_events) {
            if (const auto* p = e.get<ev::PlayerEliminated>()) {
                k.forced[p->player] = p->revealed_role;
            }
        }
    }
    return k;
}

std::map<Role, double> distribution_for(int player, const Knowledge& k,
                                        const std::map<Role, int>& remaining,
                                        const ReviewConfig& cfg) {
    std::map<Role, double> w;
    for (Role r : kAllRoles) {
        double base = static_cast<double>(std::max(0, remaining.count(r) ? remaining.at(r) : 0));
        if (k.village_only.count(player) && r == Role::Mafia) base = 0.0;
        w[r] = base;
    }

    double total = 0.0;
    for (auto& [r, v] : w) total += v;
    if (total <= 0.0) {
        for (Role r : kAllRoles) {
            w[r] = (k.village_only.count(player) && r == Role::Mafia) ? 0.0 : 1.0;
        }
    }

    if (auto it = k.suspicion.find(player); it != k.suspicion.end() && w[Role::Mafia] > 0.0) {
        double s = std::clamp(it->second, -cfg.suspicion_clamp, cfg.suspicion_clamp);
        w[Role::Mafia] *= std::exp(s / cfg.suspicion_temperature);
    }

    total = 0.0;
    for (auto& [r, v] : w) total += v;
    for (auto& [r, v] : w) v /= total;
    return w;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string event_ref(int seq) { return "[E" + std::to_string(seq) + "]"; }

} // namespace

Review rule_based_review(const Observation& obs, const mem::RevacMemory& memory,
                         const ReviewConfig& cfg) {
    Review out;
    const Knowledge k = gather_knowledge(obs, memory, cfg);

    std::map<Role, int> remaining = obs.config.role_counts;
    for (const auto& [player, role] : k.forced) {
        (void)player;
        if (auto it = remaining.find(role); it != remaining.end() && it->second > 0) it->second -= 1;
    }

    for (int p = 0; p < obs.num_players; ++p) {
        if (auto it = k.forced.find(p); it != k.forced.end()) {
            std::map<Role, double> point;
            for (Role r : kAllRoles) point[r] = (r == it->second) ? 1.0 : 0.0;
            out.role_probabilities[p] = std::move(point);
        } else {
            out.role_probabilities[p] = distribution_for(p, k, remaining, cfg);
        }
    }

    if (cfg.use_memory) {
        out.contradictions = memory.detect_contradictions();
        for (const auto& entry : memory.graph().suspicion_ranking()) {
            out.suspicion_order.push_back(entry.player);
        }
    } else {
        for (int p : obs.living) out.suspicion_order.push_back(p);
    }

    // Night recommendation for the owner's role.
    const auto& graph = memory.graph();
    auto claimed_power = [&](int p) {
        if (!cfg.use_memory || graph.size() <= p) return false;
        for (const auto& [role, day] : graph.node(p).claimed_roles) {
            (void)day;
            if (is_unique_role(role)) return true;
        }
        return false;
    };
    auto living_others = [&] {
        std::vector<int> v;
        for (int p : obs.living) {
            if (p != obs.viewer) v.push_back(p);
        }
        return v;
    }();

    switch (obs.viewer_role) {
    case Role::Detective: {
        std::set<int> confirmed;
        if (cfg.use_memory) {
            for (const auto& f : memory.confirmed_facts()) confirmed.insert(f.subject);
        }
        int best = -1;
        double best_p = -1.0;
        for (int p : living_others) {
            if (confirmed.count(p)) continue;
            double mp = out.prob(p, Role::Mafia);
            if (mp > best_p) {
                best_p = mp;
                best = p;
            }
        }
        if (best >= 0) out.recommended_action = {best, NightActionKind::Investigate};
        break;
    }
    case Role::Doctor: {
        int best = obs.viewer; // self unless a power claim needs cover
        double best_pressure = -1.0;
        for (int p : living_others) {
            if (!claimed_power(p)) continue;
            double pr = cfg.use_memory ? graph.pressure_score(p).score : 0.0;
            if (pr > best_pressure) {
                best_pressure = pr;
                best = p;
            }
        }
        out.recommended_action = {best, NightActionKind::Protect};
        break;
    }
    case Role::Mafia: {
        int best = -1;
        std::tuple<int, double, int> best_key{-1, 0.0, 0}; // (threat, -mafia_p, -id) maximized
        for (int p : living_others) {
            if (std::find(obs.mafia_partners.begin(), obs.mafia_partners.end(), p) !=
                obs.mafia_partners.end()) {
                continue;
            }
            std::tuple<int, double, int> key{claimed_power(p) ? 1 : 0, -out.prob(p, Role::Mafia), -p};
            if (best < 0 || key > best_key) {
                best_key = key;
                best = p;
            }
        }
        if (best >= 0) out.recommended_action = {best, NightActionKind::Kill};
        break;
    }
    default:
        break;
    }

    // Narrative: a compact evidence-first report. Event references use the
    // [E<seq>] notation so downstream scoring can verify citations.
    std::ostringstream text;
    text << "Review by P" << obs.viewer << " (day " << obs.phase.day << ", " << obs.phase.label()
         << ").\n";
    text << "Own role: " << to_string(obs.viewer_role) << ".\n";

    if (cfg.use_memory) {
        for (const auto& f : memory.confirmed_facts()) {
            if (f.kind == mem::FactKind::InvestigationCheck) {
                text << "Confirmed: P" << f.subject << " is " << to_string(f.alignment)
                     << " (night check) " << event_ref(f.source_seq) << ".\n";
            } else if (f.kind == mem::FactKind::PublicReveal) {
                text << "Confirmed: P" << f.subject << " revealed "
                     << (f.role ? to_string(*f.role) : std::string("unknown")) << " "
                     << event_ref(f.source_seq) << ".\n";
            }
        }
    }

    if (out.contradictions.empty()) {
        text << "No contradictions detected.\n";
    } else {
        for (const auto& c : out.contradictions) {
            text << "Contradiction: ";
            switch (c.kind) {
            case mem::ContradictionKind::CounterClaim: {
                text << "counter-claim between P" << c.subject;
                for (int o : c.others) text << " and P" << o;
                break;
            }
            case mem::ContradictionKind::SelfContradiction:
                text << "self-contradiction by P" << c.subject;
                break;
            case mem::ContradictionKind::RoleAbilityMismatch:
                text << "role-ability mismatch for P" << c.subject;
                break;
            case mem::ContradictionKind::ImpossibleReference:
                text << "impossible reference by P" << c.subject;
                for (int o : c.others) text << " about dead P" << o;
                break;
            }
            text << " ";
            for (int seq : c.evidence) text << event_ref(seq);
            text << ".\n";
        }
    }

    if (cfg.use_memory) {
        // Strongest pressure target with citations to the actual edges.
        int top = -1;
        double top_score = 0.0;
        for (int p : obs.living) {
            double s = graph.size() > p ? graph.pressure_score(p).score : 0.0;
            if (s > top_score) {
                top_score = s;
                top = p;
            }
        }
        if (top >= 0) {
            auto pr = graph.pressure_score(top);
            text << "Pressure: P" << top << " pressured by " << pr.accusers
                 << " player(s), score " << fmt(pr.score) << " ";
            int cited = 0;
            for (const auto& e : graph.edges()) {
                if (e.dst == top && e.weight < 0.0 && cited < 2) {
                    text << event_ref(e.turn);
                    ++cited;
                }
            }
            text << ".\n";
        }
        for (const auto& [pair, score] : graph.collusion_pairs(sag::kDefaultCollusionThreshold)) {
            text << "Support: mutual defense P" << pair.first << "<->P" << pair.second << " (score "
                 << fmt(score) << ").\n";
        }
    }

    text << "Reads:";
    for (int p = 0; p < obs.num_players; ++p) {
        if (!obs.living.count(p)) continue;
        const auto& dist = out.role_probabilities.at(p);
        text << " P" << p << ":";
        for (Role r : kAllRoles) text << " " << to_string(r) << "=" << fmt(dist.at(r));
        text << " |";
    }
    text << "\n";

    {
        // Always cite the two most recent events the owner can see.
        auto all = obs.all_events();
        text << "Basis: ";
        std::size_t n = all.size();
        if (n >= 2) text << event_ref(all[n - 2].seq);
        if (n >= 1) text << event_ref(all[n - 1].seq);
        text << "\n";
    }

    {
        int dead_mafia = 0;
        const auto& revealed =
            cfg.use_memory ? memory.revealed_roles() : std::map<int, Role>{};
        if (cfg.use_memory) {
            for (const auto& [p, r] : revealed) {
                if (r == Role::Mafia) ++dead_mafia;
            }
        } else {
            for (const auto& e : obs.public_events) {
                if (const auto* p = e.get<ev::PlayerEliminated>()) {
                    if (p->revealed_role == Role::Mafia) ++dead_mafia;
                }
            }
        }
        int expect = std::max(1, obs.config.count(Role::Mafia) - dead_mafia);
        std::vector<int> suspects;
        for (int p : obs.living) suspects.push_back(p);
        std::stable_sort(suspects.begin(), suspects.end(), [&](int a, int b) {
            double pa = out.prob(a, Role::Mafia), pb = out.prob(b, Role::Mafia);
            if (pa != pb) return pa > pb;
            return a < b;
        });
        if (static_cast<int>(suspects.size()) > expect) suspects.resize(static_cast<std::size_t>(expect));
        text << "Conclusion: most likely mafia:";
        for (std::size_t i = 0; i < suspects.size(); ++i) {
            text << (i ? ", P" : " P") << suspects[i];
        }
        text << ".\n";
    }

    out.narrative = text.str();
    return out;
}

std::optional<std::map<int, std::map<Role, double>>>
parse_probability_block(const std::string& text, int roster_size) {
    // "P<k>:" anchors a per-player block; role=value tokens run until the
    // next anchor. Several blocks may share a line.
    struct Anchor {
        int player;
        std::size_t content_start;
        std::size_t pos;
    };
    std::vector<Anchor> anchors;
    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        if (text[pos] != 'P' && text[pos] != 'p') continue;
        std::size_t num_start = pos + 1;
        std::size_t num_end = num_start;
        while (num_end < text.size() && std::isdigit(static_cast<unsigned char>(text[num_end]))) {
            ++num_end;
        }
        if (num_end == num_start || num_end >= text.size() || text[num_end] != ':') continue;
        int player = std::stoi(text.substr(num_start, num_end - num_start));
        if (player >= roster_size) continue;
        anchors.push_back({player, num_end + 1, pos});
    }

    std::map<int, std::map<Role, double>> out;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        std::size_t end = i + 1 < anchors.size() ? anchors[i + 1].pos : text.size();
        std::map<Role, double> dist;
        std::istringstream rest(text.substr(anchors[i].content_start,
                                            end - anchors[i].content_start));
        std::string tok;
        while (rest >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            try {
                Role r = role_from_string(tok.substr(0, eq));
                double v = std::stod(tok.substr(eq + 1));
                if (!(v >= 0.0) || !std::isfinite(v)) return std::nullopt;
                dist[r] = v;
            } catch (const RuleError&) {
                continue; // not a role token
            } catch (const std::exception&) {
                return std::nullopt;
            }
        }
        if (dist.empty()) continue;
        double total = 0.0;
        for (auto& [r, v] : dist) total += v;
        if (total <= 0.0) return std::nullopt;
        std::map<Role, double> full;
        for (Role r : kAllRoles) full[r] = dist.count(r) ? dist[r] / total : 0.0;
        out[anchors[i].player] = std::move(full);
    }
    if (out.empty()) return std::nullopt;
    return out;
}

Review review(const Observation& obs, const mem::RevacMemory& memory, TextBackend* backend,
              Rng& rng, const ReviewConfig& cfg, int retries,
              std::chrono::milliseconds backoff_base) {
    Review base = rule_based_review(obs, memory, cfg);
    if (!backend) return base;

    BackendRequest req;
    req.system =
        "You are the reviewer for a social-deduction seat. Analyse the game so far and "
        "output, for every living player, one line of role probabilities in exactly this "
        "format: P<k>: villager=<x> doctor=<x> detective=<x> mafia=<x>. Then explain your "
        "reasoning, citing events as [E<seq>].";
    req.params.seed = obs.viewer >= 0 ? static_cast<std::uint64_t>(obs.viewer) : 0;

    std::ostringstream status;
    status << "Phase: " << obs.phase.label() << " day " << obs.phase.day << ". You are P"
           << obs.viewer << " (" << to_string(obs.viewer_role) << "). Living:";
    for (int p : obs.living) status << " P" << p;
    req.segments.push_back({ContextSegment::Kind::Status, status.str(), 0});

    for (const Event& e : obs.private_events) {
        nlohmann::json j;
        to_json(j, e);
        req.segments.push_back({ContextSegment::Kind::PrivateFact, "private: " + j.dump(), e.seq});
    }
    for (const Event& e : obs.public_events) {
        nlohmann::json j;
        to_json(j, e);
        req.segments.push_back({ContextSegment::Kind::PublicChat, j.dump(), e.seq});
    }
    req.segments.push_back(
        {ContextSegment::Kind::Review, "Current rule-based reads:\n" + base.narrative, 0});

    auto resp = generate_with_retries(*backend, req, rng, retries, backoff_base);
    if (!resp) return base;
    auto parsed = parse_probability_block(resp->text, obs.num_players);
    if (!parsed) return base;

    Review out = base;
    for (auto& [player, dist] : *parsed) {
        if (obs.living.count(player)) out.role_probabilities[player] = dist;
    }
    out.narrative = resp->text;
    if (!review_valid(out, obs)) return base;
    return out;
}

bool review_valid(const Review& review, const Observation& obs) {
    std::map<int, Role> revealed;
    for (const auto& e : obs.public_events) {
        if (const auto* p = e.get<ev::PlayerEliminated>()) revealed[p->player] = p->revealed_role;
    }
    for (int p = 0; p < obs.num_players; ++p) {
        auto it = review.role_probabilities.find(p);
        if (it == review.role_probabilities.end()) return false;
        double sum = 0.0;
        for (Role r : kAllRoles) {
            auto jt = it->second.find(r);
            double v = jt == it->second.end() ? 0.0 : jt->second;
            if (v < -1e-12 || v > 1.0 + 1e-12) return false;
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9) return false;
        if (!obs.living.count(p)) {
            auto rt = revealed.find(p);
            if (rt != revealed.end() && review.prob(p, rt->second) < 1.0 - 1e-9) return false;
        }
    }
    return true;
}

} // namespace mafia::agent
