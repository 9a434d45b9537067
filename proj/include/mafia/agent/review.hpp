#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mafia/agent/backend.hpp"
#include "mafia/core/observation.hpp"
#include "mafia/memory/memory.hpp"

namespace mafia::agent {

// Structured reviewer output. For every living player the role distribution
// sums to one; eliminated players carry a point mass on their revealed role.
struct Review {
    std::map<int, std::map<Role, double>> role_probabilities;
    std::vector<mem::ContradictionRecord> contradictions;
    std::vector<int> suspicion_order; // living players, most suspicious first
    std::optional<std::pair<int, NightActionKind>> recommended_action;
    std::string narrative;

    double prob(int player, Role r) const {
        auto it = role_probabilities.find(player);
        if (it == role_probabilities.end()) return 0.0;
        auto jt = it->second.find(r);
        return jt == it->second.end() ? 0.0 : jt->second;
    }
};

struct ReviewConfig {
    // Suspicion-to-mafia-mass map: mafia weight *= exp(score / temperature),
    // score clamped to +-clamp.
    double suspicion_temperature = 1.0;
    double suspicion_clamp = 10.0;
    // Off for the memoryless agent lineage: probabilities come from priors
    // and public reveals only, no graph signal, no contradiction list.
    bool use_memory = true;
};

Review rule_based_review(const Observation& obs, const mem::RevacMemory& memory,
                         const ReviewConfig& cfg = {});

// Reviewer over a text backend. The model is asked for a probability block
// ("P3: villager=0.10 doctor=0.05 detective=0.05 mafia=0.80" per player);
// on backend failure or an unparseable reply this falls back to the
// rule-based result, so a review is always produced.
Review review(const Observation& obs, const mem::RevacMemory& memory, TextBackend* backend,
              Rng& rng, const ReviewConfig& cfg = {}, int retries = 2,
              std::chrono::milliseconds backoff_base = std::chrono::milliseconds(100));

std::optional<std::map<int, std::map<Role, double>>>
parse_probability_block(const std::string& text, int roster_size);

// Invariant check: distributions in range and summing to one, dead players on
// their revealed role.
bool review_valid(const Review& review, const Observation& obs);

} // namespace mafia::agent
