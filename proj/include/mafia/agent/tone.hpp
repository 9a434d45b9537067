#pragma once

#include <string>
#include <vector>

#include "mafia/agent/review.hpp"
#include "mafia/core/observation.hpp"
#include "mafia/memory/memory.hpp"

namespace mafia::agent {

enum class Tone { AggressivePressuring, WithdrawingPassive, LogicallyAnchoring, ContrarianSkeptical };

std::string to_string(Tone t);

struct ToneProfile {
    Tone tone = Tone::LogicallyAnchoring;
    std::vector<std::string> directives; // concrete style instructions, never empty
    std::string rationale;               // which graph signal triggered the choice
};

struct ToneConfig {
    // (1) self-preservation: owner within the top_k of table suspicion.
    int self_preserve_top_k = 2;
    // (3) contrarian: unsupported pile-on at or above this pressure score.
    double contrarian_pressure_threshold = 4.0;
    // (4) aggressive: top suspect's defense in-weight strictly below this.
    double aggressive_defense_max = 1.0;
};

struct ToneContext {
    int owner = -1;
    Phase phase;
    bool is_lylo = false;
    Alignment own_alignment = Alignment::Village;
};

// Whether one more mislynch hands the mafia parity, judged from public
// information (configured mafia count minus revealed mafia deaths).
bool lylo_state(const Observation& obs);

// Deterministic first-match cascade:
//   1. the agent itself is drawing heat      -> withdraw
//   2. a confirmed fact implicates a living  -> anchor on it
//   3. heavy pressure with zero evidence     -> contrarian
//   4. suspect pressured and undefended      -> aggressive push
//   5. otherwise                             -> anchor
ToneProfile select_tone(const Review& review, const mem::RevacMemory& memory,
                        const ToneContext& ctx, const ToneConfig& cfg = {});

} // namespace mafia::agent
