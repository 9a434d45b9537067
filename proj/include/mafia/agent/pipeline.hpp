#pragma once

#include <memory>
#include <optional>
#include <string>

#include "mafia/agent/review.hpp"
#include "mafia/agent/tone.hpp"
#include "mafia/core/observation.hpp"

namespace mafia::agent {

// Stage toggles across the agent lineage: the baseline runs reviewer+executor
// only, the middle generation adds persistent memory, the full pipeline adds
// the tone stage.
enum class AgentVariant { Revac, Revac2_1, Revac8 };

std::string to_string(AgentVariant v);
AgentVariant variant_from_string(const std::string& s);

struct AgentAction {
    enum class Kind { Say, Vote, Night, Pass };

    Kind kind = Kind::Pass;
    std::string text;          // Say
    int target = -1;           // Vote
    NightAction night;         // Night

    static AgentAction say(std::string t) { return {Kind::Say, std::move(t), -1, {}}; }
    static AgentAction vote(int target) { return {Kind::Vote, "", target, {}}; }
    static AgentAction night_action(NightAction n) { return {Kind::Night, "", -1, n}; }
    static AgentAction pass() { return {Kind::Pass, "", -1, {}}; }
};

struct PipelineConfig {
    AgentVariant variant = AgentVariant::Revac8;
    ReviewConfig review;
    ToneConfig tone;
    int retries = 2;
    std::chrono::milliseconds backoff_base{100};
};

// Chooses the concrete action for the current phase. Discussion turns render
// text under the tone profile (or a plain template when the tone stage is
// off); votes go to the most mafia-probable living non-teammate; night
// choices follow the role policy from the review. Any out-of-range choice is
// repaired to the nearest legal one, so the engine never sees an illegal
// action.
AgentAction execute_action(const Observation& obs, const Review& review,
                           const ToneProfile* tone, const mem::RevacMemory& memory,
                           TextBackend* backend, Rng& rng, const PipelineConfig& cfg);

// One seat's full pipeline instance. Owns the seat's memory; step() runs
// memory update -> review -> tone -> executor per the configured variant and
// always returns an action legal for the observed phase.
class PipelineAgent {
public:
    PipelineAgent(PipelineConfig cfg, std::shared_ptr<TextBackend> backend, std::uint64_t seed);

    AgentAction step(const Observation& obs);

    const mem::RevacMemory& memory() const { return memory_; }
    const Review& last_review() const { return last_review_; }
    const std::optional<ToneProfile>& last_tone() const { return last_tone_; }

private:
    PipelineConfig cfg_;
    std::shared_ptr<TextBackend> backend_;
    Rng rng_;
    bool initialised_ = false;
    mem::RevacMemory memory_;
    Review last_review_;
    std::optional<ToneProfile> last_tone_;
};

} // namespace mafia::agent
