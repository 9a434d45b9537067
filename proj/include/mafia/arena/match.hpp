#pragma once

#include <string>
#include <vector>

#include "mafia/arena/agents.hpp"
#include "mafia/core/transcript.hpp"

namespace mafia::arena {

struct MatchConfig {
    GameConfig game;
    std::vector<std::string> seats; // agent spec per seat
    std::uint64_t seed = 0;
};

struct MatchStats {
    int agent_steps = 0;
    int illegal_actions = 0; // engine rejected an agent's choice
    int agent_failures = 0;  // agent threw; arena substituted a default
    int repaired = 0;        // defaults/repairs applied
};

// Drives one full game: asks each seat's agent in id order, repairs any
// failure to a legal default, and never stalls. Deterministic for a fixed
// (config, seed) with deterministic agents.
Transcript run_match(const MatchConfig& config, const AgentFactory& factory,
                     MatchStats* stats = nullptr);

inline Transcript run_match(const MatchConfig& config) {
    return run_match(config, default_agent_factory());
}

} // namespace mafia::arena
