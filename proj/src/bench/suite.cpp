#include "mafia/bench/suite.hpp"

#include <fstream>
#include <sstream>

namespace mafia::bench {

PipelineCaseAgent::PipelineCaseAgent(agent::AgentVariant variant,
                                     std::shared_ptr<agent::TextBackend> backend,
                                     std::uint64_t seed)
    : variant_(variant), backend_(std::move(backend)), rng_(seed) {}

CaseResponse PipelineCaseAgent::respond(const BenchmarkCase& c) {
    Observation obs = case_observation(c);
    mem::RevacMemory memory(c.evaluated_seat, c.config.num_players, obs.viewer_role);
    agent::ReviewConfig cfg;
    cfg.use_memory = variant_ != agent::AgentVariant::Revac;
    if (cfg.use_memory) memory.catch_up(obs);

    agent::Review review = agent::review(obs, memory, backend_.get(), rng_, cfg, 2,
                                         std::chrono::milliseconds(0));

    CaseResponse out;
    out.explanation = review.narrative;
    for (int p = 0; p < c.config.num_players; ++p) {
        Role best = Role::Villager;
        double best_p = -1.0;
        for (Role r : kAllRoles) {
            double v = review.prob(p, r);
            if (v > best_p) {
                best_p = v;
                best = r;
            }
        }
        out.prediction[p] = best;
    }
    return out;
}

CaseResponse OracleCaseAgent::respond(const BenchmarkCase& c) {
    CaseResponse out;
    out.prediction = c.ground_truth;

    std::ostringstream text;
    text << "Oracle walkthrough of case " << c.id << ".\n";
    const auto& evs = c.events;
    text << "Evidence base:";
    for (std::size_t i = 0; i < evs.size() && i < 2; ++i) text << " [E" << evs[i].seq << "]";
    text << ".\n";
    for (const auto& [player, role] : c.ground_truth) {
        text << "P" << player << " is the " << to_string(role) << ".\n";
    }
    const auto contradictions = case_contradictions(c);
    if (contradictions.empty()) {
        text << "No contradictions detected in this slice.\n";
    } else {
        const auto& rec = contradictions.front();
        const char* kw = "counter-claim";
        switch (rec.kind) {
        case mem::ContradictionKind::CounterClaim: kw = "counter-claim"; break;
        case mem::ContradictionKind::SelfContradiction: kw = "self-contradiction"; break;
        case mem::ContradictionKind::RoleAbilityMismatch: kw = "role-ability mismatch"; break;
        case mem::ContradictionKind::ImpossibleReference: kw = "impossible reference"; break;
        }
        text << "Key signal: a " << kw << " involving P" << rec.subject;
        for (int seq : rec.evidence) text << " [E" << seq << "]";
        text << ".\n";
    }
    text << "Conclusion: the mafia team is";
    bool first = true;
    for (const auto& [player, role] : c.ground_truth) {
        if (role == Role::Mafia) {
            text << (first ? " P" : ", P") << player;
            first = false;
        }
    }
    text << ".\n";
    out.explanation = text.str();
    return out;
}

CaseResponse ConstantVillagerCaseAgent::respond(const BenchmarkCase& c) {
    CaseResponse out;
    for (int p = 0; p < c.config.num_players; ++p) out.prediction[p] = Role::Villager;
    out.explanation.clear();
    return out;
}

std::unique_ptr<CaseAgent> make_case_agent(const std::string& spec,
                                           std::shared_ptr<agent::TextBackend> backend,
                                           std::uint64_t seed) {
    if (spec == "oracle") return std::make_unique<OracleCaseAgent>();
    if (spec == "constant-villager") return std::make_unique<ConstantVillagerCaseAgent>();
    return std::make_unique<PipelineCaseAgent>(agent::variant_from_string(spec),
                                               std::move(backend), seed);
}

SuiteResult run_suite(CaseAgent& agent, const std::vector<BenchmarkCase>& cases,
                      agent::TextBackend* judge_backend, Rng& rng) {
    SuiteResult suite;
    for (const auto& c : cases) {
        CaseResult r;
        r.case_id = c.id;
        try {
            CaseResponse resp = agent.respond(c);
            r.prediction = std::move(resp.prediction);
            r.explanation = std::move(resp.explanation);
            JudgeOutcome j = judge(r.explanation, c, judge_backend, rng);
            Scored s = final_score(metric_a(r.prediction, c.ground_truth), j.raw);
            r.metric_a = s.metric_a;
            r.metric_b_raw = s.metric_b_raw;
            r.metric_b_norm = s.metric_b_norm;
            r.final_score = s.final_score;
            r.judge_stub = j.used_stub;
        } catch (const std::exception&) {
            r.agent_failed = true; // scores stay zero, suite keeps going
        }
        suite.results.push_back(std::move(r));
    }

    if (!suite.results.empty()) {
        double a = 0.0, b = 0.0, f = 0.0;
        for (const auto& r : suite.results) {
            a += r.metric_a;
            b += r.metric_b_norm;
            f += r.final_score;
        }
        const double n = static_cast<double>(suite.results.size());
        suite.mean_a = a / n;
        suite.mean_b_norm = b / n;
        suite.mean_final = f / n;
    }
    return suite;
}

void write_results(const SuiteResult& suite, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& r : suite.results) {
        nlohmann::json pred = nlohmann::json::object();
        for (const auto& [player, role] : r.prediction) {
            pred[std::to_string(player)] = to_string(role);
        }
        nlohmann::json j = {{"case", r.case_id},
                            {"prediction", pred},
                            {"explanation", r.explanation},
                            {"metric_a", r.metric_a},
                            {"metric_b_raw", r.metric_b_raw},
                            {"metric_b_norm", r.metric_b_norm},
                            {"final", r.final_score},
                            {"judge_stub", r.judge_stub},
                            {"agent_failed", r.agent_failed}};
        out << j.dump() << '\n';
    }
    nlohmann::json agg = {{"aggregate", true},
                          {"cases", suite.results.size()},
                          {"mean_a", suite.mean_a},
                          {"mean_b_norm", suite.mean_b_norm},
                          {"mean_final", suite.mean_final}};
    out << agg.dump() << '\n';
}

} // namespace mafia::bench
