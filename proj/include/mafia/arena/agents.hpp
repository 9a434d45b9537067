#pragma once

#include <functional>
#include <memory>
#include <string>

#include "mafia/agent/pipeline.hpp"
#include "mafia/core/observation.hpp"

namespace mafia::arena {

// A seated actor: the match runner feeds it observations and gets actions.
class Agent {
public:
    virtual ~Agent() = default;
    virtual agent::AgentAction step(const Observation& obs) = 0;
};

// Builds an agent from a spec string. Known specs:
//   scripted: "pass", "random", "killer", "heuristic"
//   pipeline: "revac", "revac2_1", "revac8"
using AgentFactory =
    std::function<std::unique_ptr<Agent>(const std::string& spec, int seat, std::uint64_t seed)>;

// Factory resolving the specs above; pipeline agents share the given backend
// (nullptr means fully rule-based).
AgentFactory default_agent_factory(std::shared_ptr<agent::TextBackend> backend = nullptr);

std::unique_ptr<Agent> make_scripted_agent(const std::string& spec, std::uint64_t seed);

} // namespace mafia::arena
