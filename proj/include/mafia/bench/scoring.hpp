#pragma once

#include <map>
#include <string>

#include "mafia/agent/backend.hpp"
#include "mafia/bench/case.hpp"
#include "mafia/memory/memory.hpp"

namespace mafia::bench {

// Fraction of correct role predictions over the whole roster, eliminated
// players included. Missing entries count as wrong.
double metric_a(const std::map<int, Role>& prediction, const std::map<int, Role>& truth);

// Deterministic reasoning-quality rubric, 1.25 points per criterion:
//   1. cites at least two real events ([E<seq>] present in the case)
//   2. contradiction handling matches the case (names a real one, or states
//      "no contradiction" when the case has none)
//   3. grounded: references at least one real player/event and nothing
//      outside the case
//   4. a conclusion section names players already discussed above it
double stub_judge(const std::string& explanation, const BenchmarkCase& c);

struct JudgeOutcome {
    double raw = 0.0; // 0..5
    bool used_stub = false;
};

// Model-backed judge scoring 0-5 against the same four-criterion rubric;
// falls back to the deterministic stub when the backend fails or replies
// unparseably.
JudgeOutcome judge(const std::string& explanation, const BenchmarkCase& c,
                   agent::TextBackend* backend, Rng& rng);

struct Scored {
    double metric_a = 0.0;
    double metric_b_raw = 0.0;
    double metric_b_norm = 0.0;
    double final_score = 0.0;
};

// metric_b_norm = raw/5; final = 0.5*A + 0.5*B_norm. Throws on out-of-range
// inputs.
Scored final_score(double a, double b_raw);

// Reference contradictions visible from the evaluated seat, shared by the
// stub judge and the oracle baseline.
std::vector<mem::ContradictionRecord> case_contradictions(const BenchmarkCase& c);

} // namespace mafia::bench
