#include "mafia/arena/match.hpp"

#include "mafia/memory/extract.hpp"
#include "mafia/util/rng.hpp"

namespace mafia::arena {

using agent::AgentAction;

namespace {

AgentAction safe_step(Agent& a, const Observation& obs, MatchStats& stats) {
    ++stats.agent_steps;
    try {
        return a.step(obs);
    } catch (const std::exception&) {
        ++stats.agent_failures;
        return AgentAction::pass();
    }
}

int default_vote_target(const GameState& g, int voter) {
    for (int p : g.living_ids()) {
        if (p != voter) return p;
    }
    return -1;
}

} // namespace

Transcript run_match(const MatchConfig& config, const AgentFactory& factory, MatchStats* stats) {
    MatchStats local;
    MatchStats& st = stats ? *stats : local;

    GameConfig game_cfg = config.game;
    game_cfg.seed = config.seed;
    game_cfg.validate();
    if (static_cast<int>(config.seats.size()) != game_cfg.num_players) {
        throw RuleError(RuleError::Code::BadConfig, "seat count does not match player count");
    }

    std::vector<std::unique_ptr<Agent>> agents;
    agents.reserve(config.seats.size());
    for (int seat = 0; seat < game_cfg.num_players; ++seat) {
        auto a = factory(config.seats[static_cast<std::size_t>(seat)], seat,
                         derive_seed(config.seed, 1000 + static_cast<std::uint64_t>(seat)));
        if (!a) {
            throw RuleError(RuleError::Code::BadArgument,
                            "unresolvable agent spec: " + config.seats[static_cast<std::size_t>(seat)]);
        }
        agents.push_back(std::move(a));
    }

    GameState game = GameState::new_game(game_cfg);

    while (!game.phase().is_ended()) {
        if (game.phase().is_night()) {
            for (int seat : game.living_ids()) {
                Role role = game.role_of(seat);
                if (role == Role::Villager) continue;
                AgentAction act = safe_step(*agents[static_cast<std::size_t>(seat)],
                                            game.observation_for(seat), st);
                if (act.kind != AgentAction::Kind::Night) {
                    if (act.kind != AgentAction::Kind::Pass) ++st.illegal_actions;
                    continue; // a skipped night action is always legal
                }
                try {
                    game.submit_night_action(seat, act.night);
                } catch (const RuleError&) {
                    ++st.illegal_actions;
                }
            }
            game.resolve_night();
            continue;
        }

        if (game.phase().is_day(DayStage::Discussion)) {
            const int day = game.phase().day;
            const auto speakers = game.living_ids(); // fixed seat order for the whole day
            for (int round = 0; round < game_cfg.discussion_rounds_per_day &&
                                game.phase().is_day(DayStage::Discussion);
                 ++round) {
                for (int seat : speakers) {
                    if (!game.phase().is_day(DayStage::Discussion)) break;
                    AgentAction act = safe_step(*agents[static_cast<std::size_t>(seat)],
                                                game.observation_for(seat), st);
                    std::string text;
                    if (act.kind == AgentAction::Kind::Say) {
                        text = act.text;
                    } else if (act.kind != AgentAction::Kind::Pass) {
                        ++st.illegal_actions;
                        ++st.repaired;
                    }
                    auto acts = mem::stamp_acts(
                        mem::extract_acts(text, game_cfg.num_players, seat), day,
                        static_cast<int>(game.events().size()));
                    try {
                        game.record_statement(seat, text, acts);
                    } catch (const RuleError&) {
                        ++st.illegal_actions;
                    }
                }
            }
            continue;
        }

        // voting
        for (int seat : game.living_ids()) {
            AgentAction act = safe_step(*agents[static_cast<std::size_t>(seat)],
                                        game.observation_for(seat), st);
            if (act.kind == AgentAction::Kind::Pass) continue; // abstain
            int target = act.kind == AgentAction::Kind::Vote ? act.target : -1;
            if (act.kind != AgentAction::Kind::Vote) {
                ++st.illegal_actions;
                target = default_vote_target(game, seat);
                ++st.repaired;
            }
            try {
                game.cast_vote(seat, target);
            } catch (const RuleError&) {
                ++st.illegal_actions;
                int fallback = default_vote_target(game, seat);
                if (fallback >= 0) {
                    ++st.repaired;
                    try {
                        game.cast_vote(seat, fallback);
                    } catch (const RuleError&) {
                    }
                }
            }
        }
        game.tally_votes();
    }

    Transcript t;
    t.config = game_cfg;
    for (const auto& p : game.players()) t.roles.push_back(p.role);
    t.seat_specs = config.seats;
    t.winner = game.phase().winner;
    t.events = game.events();
    return t;
}

} // namespace mafia::arena
