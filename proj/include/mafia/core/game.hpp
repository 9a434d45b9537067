#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mafia/core/events.hpp"
#include "mafia/core/observation.hpp"
#include "mafia/core/types.hpp"

namespace mafia {

// Resolved night-action buffer as seen at resolution time.
struct NightBuffer {
    std::optional<int> mafia_target;
    std::optional<int> doctor_target;
    std::optional<int> detective_target;
};

// Deterministic Secret Mafia engine. A GameState is a value: copy/move it
// freely, never mutate one instance from two threads. All mutating operations
// throw RuleError and leave the state untouched on failure.
class GameState {
public:
    // Roles assigned by seeded shuffle of the configured multiset.
    static GameState new_game(const GameConfig& config);

    // Roles assigned explicitly (fixtures, replay). The multiset must match
    // config.role_counts.
    static GameState with_roles(const GameConfig& config, const std::vector<Role>& roles);

    // --- night ---
    void submit_night_action(int actor, const NightAction& action);
    void resolve_night();

    // --- day ---
    void record_statement(int speaker, const std::string& text,
                          const std::vector<sag::SocialAct>& acts);
    void cast_vote(int voter, int target);
    std::optional<int> tally_votes(); // returns eliminated player, if any

    // --- queries ---
    std::optional<Alignment> check_win() const;
    Observation observation_for(int viewer) const;

    const GameConfig& config() const { return cfg_; }
    const Phase& phase() const { return phase_; }
    const std::vector<Event>& events() const { return log_; }
    const std::vector<PlayerState>& players() const { return players_; }

    bool exists(int id) const { return id >= 0 && id < static_cast<int>(players_.size()); }
    bool alive(int id) const { return exists(id) && players_[id].alive; }
    Role role_of(int id) const;
    std::vector<int> living_ids() const;
    int living_count() const;
    int living_count(Alignment a) const;
    NightBuffer night_buffer() const;
    int statements_today() const { return statements_today_; }

private:
    GameState() = default;

    void require_phase_night() const;
    void require_player(int id) const;
    void require_alive(int id, const char* who) const;
    Event& append(EventKind kind, ev::Payload payload, std::vector<int> visibility = {});
    void eliminate(int id);
    void enter_day(int day);
    void advance_or_end(int next_night);
    bool maybe_end();

    GameConfig cfg_;
    std::vector<PlayerState> players_;
    Phase phase_;
    std::vector<Event> log_;

    // kill choices recorded per mafia actor; the lowest-id living submitter
    // is authoritative at resolution
    std::map<int, int> mafia_choices_;
    std::optional<int> doctor_target_;
    std::optional<int> detective_target_;

    std::map<int, int> votes_; // final vote per living voter
    int statements_today_ = 0;
    int statement_quota_ = 0;
};

} // namespace mafia
