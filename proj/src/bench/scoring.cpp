#include "mafia/bench/scoring.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "mafia/memory/memory.hpp"

namespace mafia::bench {

double metric_a(const std::map<int, Role>& prediction, const std::map<int, Role>& truth) {
    if (truth.empty()) return 0.0;
    int correct = 0;
    for (const auto& [player, role] : truth) {
        auto it = prediction.find(player);
        if (it != prediction.end() && it->second == role) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(truth.size());
}

namespace {

std::string lowercase(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// All "P<k>" / "Player <k>" mentions with their positions.
std::vector<std::pair<std::size_t, int>> player_mentions(const std::string& lower) {
    std::vector<std::pair<std::size_t, int>> out;
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (lower[i] != 'p') continue;
        if (i > 0 && (std::isalnum(static_cast<unsigned char>(lower[i - 1])) != 0)) continue;
        std::size_t digits = i + 1;
        if (lower.compare(i, 7, "player ") == 0) digits = i + 7;
        std::size_t end = digits;
        while (end < lower.size() && std::isdigit(static_cast<unsigned char>(lower[end]))) ++end;
        if (end == digits || end - digits > 3) continue;
        if (end < lower.size() && std::isalpha(static_cast<unsigned char>(lower[end]))) continue;
        out.emplace_back(i, std::stoi(lower.substr(digits, end - digits)));
    }
    return out;
}

std::vector<std::pair<std::size_t, int>> event_refs(const std::string& lower) {
    std::vector<std::pair<std::size_t, int>> out;
    for (std::size_t i = 0; i + 3 < lower.size(); ++i) {
        if (lower[i] != '[' || lower[i + 1] != 'e') continue;
        std::size_t end = i + 2;
        while (end < lower.size() && std::isdigit(static_cast<unsigned char>(lower[end]))) ++end;
        if (end == i + 2 || end >= lower.size() || lower[end] != ']') continue;
        out.emplace_back(i, std::stoi(lower.substr(i + 2, end - i - 2)));
    }
    return out;
}

const char* kind_keyword(mem::ContradictionKind k) {
    switch (k) {
    case mem::ContradictionKind::CounterClaim: return "counter-claim";
    case mem::ContradictionKind::SelfContradiction: return "self-contradiction";
    case mem::ContradictionKind::RoleAbilityMismatch: return "role-ability mismatch";
    case mem::ContradictionKind::ImpossibleReference: return "impossible reference";
    }
    return "counter-claim";
}

} // namespace

std::vector<mem::ContradictionRecord> case_contradictions(const BenchmarkCase& c) {
    Observation obs = case_observation(c);
    mem::RevacMemory memory(c.evaluated_seat, c.config.num_players, obs.viewer_role);
    memory.catch_up(obs);
    return memory.detect_contradictions();
}

double stub_judge(const std::string& explanation, const BenchmarkCase& c) {
    const std::string lower = lowercase(explanation);
    const auto players = player_mentions(lower);
    const auto refs = event_refs(lower);

    std::set<int> case_seqs;
    for (const auto& e : c.events) case_seqs.insert(e.seq);

    std::set<int> valid_refs;
    bool bad_ref = false;
    for (const auto& [pos, seq] : refs) {
        (void)pos;
        if (case_seqs.count(seq)) {
            valid_refs.insert(seq);
        } else {
            bad_ref = true;
        }
    }
    bool bad_player = false;
    for (const auto& [pos, id] : players) {
        (void)pos;
        if (id < 0 || id >= c.config.num_players) bad_player = true;
    }

    double score = 0.0;

    // 1. evidence: at least two distinct real citations
    if (valid_refs.size() >= 2 && !bad_ref) score += 1.25;

    // 2. contradiction handling
    const auto contradictions = case_contradictions(c);
    if (contradictions.empty()) {
        if (!explanation.empty() && lower.find("no contradiction") != std::string::npos) {
            score += 1.25;
        }
    } else {
        for (const auto& rec : contradictions) {
            if (lower.find(kind_keyword(rec.kind)) != std::string::npos) {
                score += 1.25;
                break;
            }
        }
    }

    // 3. grounded in the case, nothing fabricated
    if (!bad_player && !bad_ref && (!players.empty() || !valid_refs.empty())) score += 1.25;

    // 4. conclusion names players that the body already discussed
    std::size_t concl = lower.rfind("conclusion");
    if (concl != std::string::npos) {
        std::set<int> before, after;
        for (const auto& [pos, id] : players) {
            (pos < concl ? before : after).insert(id);
        }
        bool consistent = !after.empty() && !bad_player;
        for (int id : after) {
            if (!before.count(id)) consistent = false;
        }
        if (consistent) score += 1.25;
    }

    return std::clamp(score, 0.0, 5.0);
}

JudgeOutcome judge(const std::string& explanation, const BenchmarkCase& c,
                   agent::TextBackend* backend, Rng& rng) {
    if (backend) {
        agent::BackendRequest req;
        req.system =
            "You grade one explanation from a social-deduction reasoning benchmark on a 0-5 "
            "scale: +1.25 for grounded event citations, +1.25 for correct contradiction "
            "handling, +1.25 for avoiding hallucinated players or events, +1.25 for a "
            "conclusion consistent with the cited evidence. Reply with 'SCORE: <value>'.";
        std::ostringstream ctx;
        ctx << "Case " << c.id << " (" << c.config.num_players << " players).\nExplanation:\n"
            << explanation;
        req.segments.push_back({agent::ContextSegment::Kind::Review, ctx.str(), 0});
        auto resp = agent::generate_with_retries(*backend, req, rng, 2,
                                                 std::chrono::milliseconds(0));
        if (resp) {
            const std::string lower = lowercase(resp->text);
            auto pos = lower.find("score:");
            if (pos != std::string::npos) {
                try {
                    double raw = std::stod(lower.substr(pos + 6));
                    return {std::clamp(raw, 0.0, 5.0), false};
                } catch (const std::exception&) {
                }
            }
        }
    }
    return {stub_judge(explanation, c), true};
}

Scored final_score(double a, double b_raw) {
    if (a < 0.0 || a > 1.0) {
        throw RuleError(RuleError::Code::BadArgument, "metric A outside [0,1]");
    }
    if (b_raw < 0.0 || b_raw > 5.0) {
        throw RuleError(RuleError::Code::BadArgument, "metric B outside [0,5]");
    }
    Scored s;
    s.metric_a = a;
    s.metric_b_raw = b_raw;
    s.metric_b_norm = b_raw / 5.0;
    s.final_score = 0.5 * s.metric_a + 0.5 * s.metric_b_norm;
    return s;
}

} // namespace mafia::bench
