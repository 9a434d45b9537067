#include "mafia/arena/agents.hpp"

#include <algorithm>

#include "mafia/memory/extract.hpp"
#include "mafia/util/rng.hpp"

namespace mafia::arena {

using agent::AgentAction;

namespace {

std::vector<int> living_others(const Observation& obs) {
    std::vector<int> v;
    for (int p : obs.living) {
        if (p != obs.viewer) v.push_back(p);
    }
    return v;
}

// Never speaks, never votes, never acts. The quietest seat possible.
class PassAgent : public Agent {
public:
    AgentAction step(const Observation& obs) override {
        if (obs.phase.is_day(DayStage::Discussion)) return AgentAction::say("");
        return AgentAction::pass();
    }
};

// Uniformly random legal behaviour, useful for stress playouts.
class RandomAgent : public Agent {
public:
    explicit RandomAgent(std::uint64_t seed) : rng_(seed) {}

    AgentAction step(const Observation& obs) override {
        switch (obs.phase.kind) {
        case Phase::Kind::Night: {
            auto others = living_others(obs);
            switch (obs.viewer_role) {
            case Role::Mafia:
                if (others.empty()) return AgentAction::pass();
                if (rng_.chance(0.05)) return AgentAction::pass(); // occasional skipped kill
                return AgentAction::night_action({NightActionKind::Kill, rng_.pick(others)});
            case Role::Doctor: {
                std::vector<int> all(obs.living.begin(), obs.living.end());
                return AgentAction::night_action({NightActionKind::Protect, rng_.pick(all)});
            }
            case Role::Detective:
                if (others.empty()) return AgentAction::pass();
                return AgentAction::night_action({NightActionKind::Investigate, rng_.pick(others)});
            default:
                return AgentAction::pass();
            }
        }
        case Phase::Kind::Day: {
            if (obs.phase.stage == DayStage::Discussion) {
                auto others = living_others(obs);
                double roll = rng_.unit();
                if (roll < 0.25 || others.empty()) return AgentAction::say("");
                int t = rng_.pick(others);
                if (roll < 0.55) {
                    return AgentAction::say("P" + std::to_string(t) + " is sus.");
                }
                if (roll < 0.75) {
                    return AgentAction::say("I trust P" + std::to_string(t) + ".");
                }
                return AgentAction::say("Nothing to add yet.");
            }
            std::vector<int> all(obs.living.begin(), obs.living.end());
            if (rng_.chance(0.1) || all.empty()) return AgentAction::pass(); // abstain
            return AgentAction::vote(rng_.pick(all));
        }
        case Phase::Kind::Ended:
            return AgentAction::pass();
        }
        return AgentAction::pass();
    }

private:
    Rng rng_;
};

// Mafia seat that reliably kills; keeps quiet otherwise.
class KillerAgent : public Agent {
public:
    AgentAction step(const Observation& obs) override {
        if (obs.phase.is_night() && obs.viewer_role == Role::Mafia) {
            for (int p : living_others(obs)) {
                if (std::find(obs.mafia_partners.begin(), obs.mafia_partners.end(), p) ==
                    obs.mafia_partners.end()) {
                    return AgentAction::night_action({NightActionKind::Kill, p});
                }
            }
        }
        if (obs.phase.is_day(DayStage::Discussion)) return AgentAction::say("");
        return AgentAction::pass();
    }
};

// Coordinated village play on plain rules: the detective hunts and publishes
// checks, the doctor covers claimed power roles, villagers follow published
// checks; a mafia seat removes claimed power roles first.
class HeuristicAgent : public Agent {
public:
    explicit HeuristicAgent(std::uint64_t seed) : rng_(seed) {}

    AgentAction step(const Observation& obs) override {
        scan(obs);
        switch (obs.phase.kind) {
        case Phase::Kind::Night:
            return night(obs);
        case Phase::Kind::Day:
            return obs.phase.stage == DayStage::Discussion ? talk(obs) : vote(obs);
        case Phase::Kind::Ended:
            return AgentAction::pass();
        }
        return AgentAction::pass();
    }

private:
    void scan(const Observation& obs) {
        checked_.clear();
        found_mafia_.clear();
        claimed_detective_.clear();
        published_mafia_.clear();
        for (const auto& e : obs.private_events) {
            if (const auto* r = e.get<ev::InvestigationResult>()) {
                checked_.push_back(r->target);
                if (r->alignment == Alignment::Mafia && obs.living.count(r->target)) {
                    found_mafia_.push_back(r->target);
                }
            }
        }
        for (const auto& e : obs.public_events) {
            if (const auto* s = e.get<ev::StatementMade>()) {
                for (const auto& a : s->acts) {
                    if (a.kind == sag::ActKind::ClaimRole && a.role == Role::Detective) {
                        claimed_detective_.push_back(s->speaker);
                    }
                    if (a.kind == sag::ActKind::Accuse &&
                        std::find(claimed_detective_.begin(), claimed_detective_.end(),
                                  s->speaker) != claimed_detective_.end()) {
                        published_mafia_.push_back(a.dst);
                    }
                }
            }
        }
    }

    AgentAction night(const Observation& obs) {
        auto others = living_others(obs);
        switch (obs.viewer_role) {
        case Role::Detective: {
            for (int p : others) {
                if (std::find(checked_.begin(), checked_.end(), p) == checked_.end()) {
                    return AgentAction::night_action({NightActionKind::Investigate, p});
                }
            }
            if (others.empty()) return AgentAction::pass();
            return AgentAction::night_action({NightActionKind::Investigate, others.front()});
        }
        case Role::Doctor: {
            for (int p : claimed_detective_) {
                if (obs.living.count(p) && p != obs.viewer) {
                    return AgentAction::night_action({NightActionKind::Protect, p});
                }
            }
            return AgentAction::night_action({NightActionKind::Protect, obs.viewer});
        }
        case Role::Mafia: {
            std::vector<int> candidates;
            for (int p : others) {
                if (std::find(obs.mafia_partners.begin(), obs.mafia_partners.end(), p) ==
                    obs.mafia_partners.end()) {
                    candidates.push_back(p);
                }
            }
            if (candidates.empty()) return AgentAction::pass();
            for (int p : claimed_detective_) {
                if (std::find(candidates.begin(), candidates.end(), p) != candidates.end()) {
                    return AgentAction::night_action({NightActionKind::Kill, p});
                }
            }
            return AgentAction::night_action({NightActionKind::Kill, rng_.pick(candidates)});
        }
        default:
            return AgentAction::pass();
        }
    }

    AgentAction talk(const Observation& obs) {
        if (obs.viewer_role == Role::Detective && !found_mafia_.empty()) {
            int t = found_mafia_.front();
            return AgentAction::say("I am the detective. I checked P" + std::to_string(t) + ": P" +
                                    std::to_string(t) + " is mafia. Vote P" + std::to_string(t) +
                                    ".");
        }
        return AgentAction::say("");
    }

    AgentAction vote(const Observation& obs) {
        if (obs.viewer_role == Role::Mafia) {
            // deflect onto the loudest accuser
            for (int p : claimed_detective_) {
                if (obs.living.count(p)) return AgentAction::vote(p);
            }
            auto others = living_others(obs);
            std::vector<int> candidates;
            for (int p : others) {
                if (std::find(obs.mafia_partners.begin(), obs.mafia_partners.end(), p) ==
                    obs.mafia_partners.end()) {
                    candidates.push_back(p);
                }
            }
            if (candidates.empty()) return AgentAction::pass();
            return AgentAction::vote(rng_.pick(candidates));
        }
        if (obs.viewer_role == Role::Detective && !found_mafia_.empty()) {
            return AgentAction::vote(found_mafia_.front());
        }
        for (int p : published_mafia_) {
            if (obs.living.count(p) && p != obs.viewer) return AgentAction::vote(p);
        }
        return AgentAction::pass(); // abstain rather than mislynch
    }

    Rng rng_;
    std::vector<int> checked_;
    std::vector<int> found_mafia_;
    std::vector<int> claimed_detective_;
    std::vector<int> published_mafia_;
};

class PipelineAdapter : public Agent {
public:
    PipelineAdapter(agent::PipelineConfig cfg, std::shared_ptr<agent::TextBackend> backend,
                    std::uint64_t seed)
        : agent_(std::move(cfg), std::move(backend), seed) {}

    agent::AgentAction step(const Observation& obs) override { return agent_.step(obs); }

private:
    agent::PipelineAgent agent_;
};

} // namespace

std::unique_ptr<Agent> make_scripted_agent(const std::string& spec, std::uint64_t seed) {
    if (spec == "pass") return std::make_unique<PassAgent>();
    if (spec == "random") return std::make_unique<RandomAgent>(seed);
    if (spec == "killer") return std::make_unique<KillerAgent>();
    if (spec == "heuristic") return std::make_unique<HeuristicAgent>(seed);
    return nullptr;
}

AgentFactory default_agent_factory(std::shared_ptr<agent::TextBackend> backend) {
    return [backend](const std::string& spec, int seat, std::uint64_t seed) -> std::unique_ptr<Agent> {
        (void)seat;
        if (auto scripted = make_scripted_agent(spec, seed)) return scripted;
        agent::PipelineConfig cfg;
        cfg.variant = agent::variant_from_string(spec); // throws on unknown spec
        cfg.backoff_base = std::chrono::milliseconds(0);
        return std::make_unique<PipelineAdapter>(cfg, backend, seed);
    };
}

} // namespace mafia::arena
