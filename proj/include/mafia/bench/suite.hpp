#pragma once

#include <memory>

#include "mafia/agent/pipeline.hpp"
#include "mafia/bench/scoring.hpp"

namespace mafia::bench {

struct CaseResponse {
    std::map<int, Role> prediction;
    std::string explanation;
};

// Anything that can answer a benchmark case: a pipeline reviewer, a perfect
// oracle, a constant baseline.
class CaseAgent {
public:
    virtual ~CaseAgent() = default;
    virtual CaseResponse respond(const BenchmarkCase& c) = 0;
    virtual std::string name() const = 0;
};

// Runs the configured pipeline variant's reviewer on the case observation and
// takes per-player argmax roles (ties to the first role in enumeration order).
class PipelineCaseAgent : public CaseAgent {
public:
    PipelineCaseAgent(agent::AgentVariant variant, std::shared_ptr<agent::TextBackend> backend,
                      std::uint64_t seed);

    CaseResponse respond(const BenchmarkCase& c) override;
    std::string name() const override { return to_string(variant_); }

private:
    agent::AgentVariant variant_;
    std::shared_ptr<agent::TextBackend> backend_;
    Rng rng_;
};

// Reads the ground truth; calibration ceiling for the harness.
class OracleCaseAgent : public CaseAgent {
public:
    CaseResponse respond(const BenchmarkCase& c) override;
    std::string name() const override { return "oracle"; }
};

// Predicts villager everywhere and explains nothing; calibration floor.
class ConstantVillagerCaseAgent : public CaseAgent {
public:
    CaseResponse respond(const BenchmarkCase& c) override;
    std::string name() const override { return "constant-villager"; }
};

std::unique_ptr<CaseAgent> make_case_agent(const std::string& spec,
                                           std::shared_ptr<agent::TextBackend> backend,
                                           std::uint64_t seed);

struct CaseResult {
    std::string case_id;
    std::map<int, Role> prediction;
    std::string explanation;
    double metric_a = 0.0;
    double metric_b_raw = 0.0;
    double metric_b_norm = 0.0;
    double final_score = 0.0;
    bool judge_stub = true;
    bool agent_failed = false;
};

struct SuiteResult {
    std::vector<CaseResult> results;
    double mean_a = 0.0;
    double mean_b_norm = 0.0;
    double mean_final = 0.0;
};

// Scores every case in order; an agent failure on one case records zeros and
// the suite continues.
SuiteResult run_suite(CaseAgent& agent, const std::vector<BenchmarkCase>& cases,
                      agent::TextBackend* judge_backend, Rng& rng);

// One JSON record per case plus a trailing aggregate record.
void write_results(const SuiteResult& suite, const std::string& path);

} // namespace mafia::bench
