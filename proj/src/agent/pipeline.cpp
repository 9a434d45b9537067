#include "mafia/agent/pipeline.hpp"

#include <algorithm>
#include <sstream>

namespace mafia::agent {

std::string to_string(AgentVariant v) {
    switch (v) {
    case AgentVariant::Revac: return "revac";
    case AgentVariant::Revac2_1: return "revac2_1";
    case AgentVariant::Revac8: return "revac8";
    }
    return "revac8";
}

AgentVariant variant_from_string(const std::string& s) {
    if (s == "revac") return AgentVariant::Revac;
    if (s == "revac2_1" || s == "revac2.1") return AgentVariant::Revac2_1;
    if (s == "revac8" || s == "revac_8") return AgentVariant::Revac8;
    throw RuleError(RuleError::Code::BadArgument, "unknown agent variant: " + s);
}

namespace {

std::vector<int> living_others(const Observation& obs) {
    std::vector<int> v;
    for (int p : obs.living) {
        if (p != obs.viewer) v.push_back(p);
    }
    return v;
}

bool is_partner(const Observation& obs, int p) {
    return std::find(obs.mafia_partners.begin(), obs.mafia_partners.end(), p) !=
           obs.mafia_partners.end();
}

int suspicion_rank(const Review& review, int p) {
    for (std::size_t i = 0; i < review.suspicion_order.size(); ++i) {
        if (review.suspicion_order[i] == p) return static_cast<int>(i);
    }
    return static_cast<int>(review.suspicion_order.size());
}

// argmax mafia probability; ties broken by suspicion order, then id. Own
// teammates are never picked.
int pick_vote_target(const Observation& obs, const Review& review) {
    int best = -1;
    std::tuple<double, int, int> best_key{-1.0, 0, 0};
    for (int p : living_others(obs)) {
        if (is_partner(obs, p)) continue;
        std::tuple<double, int, int> key{review.prob(p, Role::Mafia), -suspicion_rank(review, p), -p};
        if (key > best_key) {
            best_key = key;
            best = p;
        }
    }
    if (best < 0) {
        // repair fallback: lowest-id living non-self
        auto others = living_others(obs);
        if (!others.empty()) best = others.front();
    }
    return best;
}

std::string say_text(const Observation& obs, const Review& review, const ToneProfile* tone,
                     const mem::RevacMemory& memory, const PipelineConfig& cfg) {
    const bool lylo = lylo_state(obs);
    auto top_suspect = [&]() -> std::optional<int> {
        for (int p : review.suspicion_order) {
            if (p != obs.viewer && obs.living.count(p)) return p;
        }
        return std::nullopt;
    }();

    // A confirmed own check on a living player is always worth anchoring on.
    std::optional<int> checked_mafia;
    if (cfg.variant != AgentVariant::Revac) {
        for (const auto& f : memory.confirmed_facts()) {
            if (f.kind == mem::FactKind::InvestigationCheck && f.alignment == Alignment::Mafia &&
                obs.living.count(f.subject)) {
                checked_mafia = f.subject;
            }
        }
    }

    std::ostringstream out;
    if (!tone) {
        // Tone stage disabled: plain factual line.
        if (checked_mafia) {
            out << "I am the detective. I checked P" << *checked_mafia << ": P" << *checked_mafia
                << " is mafia. Vote P" << *checked_mafia << ".";
        } else if (top_suspect &&
                   memory.graph().size() > *top_suspect &&
                   memory.graph().pressure_score(*top_suspect).score > 0.0) {
            out << "Based on the discussion so far, I accuse P" << *top_suspect << ".";
        } else {
            out << "I have no strong read yet. Share what you know.";
        }
        return out.str();
    }

    switch (tone->tone) {
    case Tone::AggressivePressuring:
        if (top_suspect) {
            out << "P" << *top_suspect << ", explain yourself right now. I accuse P" << *top_suspect
                << ".";
            if (lylo) out << " We are at lynch-or-lose; full-claim immediately or you are my vote.";
        } else {
            out << "Someone is stalling this village. Claims, now.";
        }
        break;
    case Tone::WithdrawingPassive:
        out << "Okay, let's all calm down. I am just trying to follow the discussion here. I have "
               "no special powers and no agenda; I will listen before I point fingers.";
        break;
    case Tone::LogicallyAnchoring:
        if (checked_mafia) {
            out << "Let's reset. We have one confirmed fact: I am the detective and I checked P"
                << *checked_mafia << ". P" << *checked_mafia << " is mafia. We vote P"
                << *checked_mafia << " today";
            out << (lylo ? ", or we lose." : ".");
        } else if (top_suspect && memory.graph().size() > *top_suspect &&
                   memory.graph().pressure_score(*top_suspect).score > 0.0) {
            out << "Sticking to what we actually know: the pressure on P" << *top_suspect
                << " is the only real lead. I accuse P" << *top_suspect << ".";
        } else {
            out << "Let us stay structured: claims and night information in seat order, please.";
        }
        break;
    case Tone::ContrarianSkeptical:
        if (top_suspect) {
            out << "Hold on. The case against P" << *top_suspect
                << " is noise with no evidence behind it. I am not joining this bandwagon; I trust P"
                << *top_suspect << " until someone shows a fact.";
        } else {
            out << "I am not convinced by any of this. Where is the actual evidence?";
        }
        break;
    }
    return out.str();
}

NightAction night_choice(const Observation& obs, const Review& review,
                         const mem::RevacMemory& memory, const PipelineConfig& cfg) {
    auto others = living_others(obs);
    auto claimed_power = [&](int p) {
        if (cfg.variant == AgentVariant::Revac || memory.graph().size() <= p) return false;
        for (const auto& [role, day] : memory.graph().node(p).claimed_roles) {
            (void)day;
            if (is_unique_role(role)) return true;
        }
        return false;
    };

    switch (obs.viewer_role) {
    case Role::Mafia: {
        if (review.recommended_action &&
            review.recommended_action->second == NightActionKind::Kill &&
            obs.living.count(review.recommended_action->first) &&
            !is_partner(obs, review.recommended_action->first)) {
            return {NightActionKind::Kill, review.recommended_action->first};
        }
        int best = -1;
        std::tuple<int, double, int> best_key{-1, 0.0, 0};
        for (int p : others) {
            if (is_partner(obs, p)) continue;
            std::tuple<int, double, int> key{claimed_power(p) ? 1 : 0, -review.prob(p, Role::Mafia),
                                             -p};
            if (best < 0 || key > best_key) {
                best_key = key;
                best = p;
            }
        }
        return {NightActionKind::Kill, best};
    }
    case Role::Doctor: {
        if (review.recommended_action &&
            review.recommended_action->second == NightActionKind::Protect &&
            obs.living.count(review.recommended_action->first)) {
            return {NightActionKind::Protect, review.recommended_action->first};
        }
        return {NightActionKind::Protect, obs.viewer};
    }
    case Role::Detective: {
        if (review.recommended_action &&
            review.recommended_action->second == NightActionKind::Investigate &&
            obs.living.count(review.recommended_action->first) &&
            review.recommended_action->first != obs.viewer) {
            return {NightActionKind::Investigate, review.recommended_action->first};
        }
        int best = -1;
        double best_p = -1.0;
        for (int p : others) {
            double mp = review.prob(p, Role::Mafia);
            if (mp > best_p) {
                best_p = mp;
                best = p;
            }
        }
        return {NightActionKind::Investigate, best};
    }
    default:
        return {NightActionKind::Kill, -1}; // no night ability
    }
}

} // namespace

AgentAction execute_action(const Observation& obs, const Review& review, const ToneProfile* tone,
                           const mem::RevacMemory& memory, TextBackend* backend, Rng& rng,
                           const PipelineConfig& cfg) {
    switch (obs.phase.kind) {
    case Phase::Kind::Day: {
        if (obs.phase.stage == DayStage::Discussion) {
            std::string text = say_text(obs, review, tone, memory, cfg);
            if (backend) {
                BackendRequest req;
                req.system =
                    "You speak for one seat in a social-deduction game. Produce a single short "
                    "table statement following the style directives. Refer to players as P<k>.";
                std::ostringstream ctx;
                ctx << "You are P" << obs.viewer << ". Draft statement: " << text;
                req.segments.push_back({ContextSegment::Kind::Review, ctx.str(), 0});
                if (tone) {
                    for (const auto& d : tone->directives) {
                        req.segments.push_back({ContextSegment::Kind::ToneDirective, d, 0});
                    }
                }
                auto resp = generate_with_retries(*backend, req, rng, cfg.retries, cfg.backoff_base);
                if (resp && !resp->text.empty()) text = resp->text;
            }
            return AgentAction::say(text);
        }
        int target = pick_vote_target(obs, review);
        if (target < 0 || !obs.living.count(target) || target == obs.viewer) {
            auto others = living_others(obs);
            if (others.empty()) return AgentAction::pass();
            target = others.front(); // repaired to nearest legal vote
        }
        return AgentAction::vote(target);
    }
    case Phase::Kind::Night: {
        if (obs.viewer_role == Role::Villager) return AgentAction::pass();
        NightAction act = night_choice(obs, review, memory, cfg);
        if (act.target < 0 || !obs.living.count(act.target)) {
            // repair: self for protection, otherwise lowest-id living non-self
            if (obs.viewer_role == Role::Doctor) {
                act.target = obs.viewer;
            } else {
                auto others = living_others(obs);
                if (others.empty()) return AgentAction::pass();
                act.target = others.front();
            }
        }
        return AgentAction::night_action(act);
    }
    case Phase::Kind::Ended:
        return AgentAction::pass();
    }
    return AgentAction::pass();
}

PipelineAgent::PipelineAgent(PipelineConfig cfg, std::shared_ptr<TextBackend> backend,
                             std::uint64_t seed)
    : cfg_(std::move(cfg)), backend_(std::move(backend)), rng_(seed) {
    cfg_.review.use_memory = cfg_.variant != AgentVariant::Revac;
}

AgentAction PipelineAgent::step(const Observation& obs) {
    if (!initialised_) {
        memory_ = mem::RevacMemory(obs.viewer, obs.num_players, obs.viewer_role);
        initialised_ = true;
    }
    if (cfg_.variant != AgentVariant::Revac) {
        memory_.catch_up(obs);
    }

    last_review_ = review(obs, memory_, backend_.get(), rng_, cfg_.review, cfg_.retries,
                          cfg_.backoff_base);

    last_tone_.reset();
    const bool say_turn = obs.phase.is_day(DayStage::Discussion);
    if (cfg_.variant == AgentVariant::Revac8 && say_turn) {
        ToneContext ctx{obs.viewer, obs.phase, lylo_state(obs), alignment_of(obs.viewer_role)};
        last_tone_ = select_tone(last_review_, memory_, ctx, cfg_.tone);
    }

    return execute_action(obs, last_review_, last_tone_ ? &*last_tone_ : nullptr, memory_,
                          backend_.get(), rng_, cfg_);
}

} // namespace mafia::agent
