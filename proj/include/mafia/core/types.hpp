#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace mafia {

enum class Role { Villager, Doctor, Detective, Mafia };
enum class Alignment { Village, Mafia };

constexpr Role kAllRoles[] = {Role::Villager, Role::Doctor, Role::Detective, Role::Mafia};

inline Alignment alignment_of(Role r) {
    return r == Role::Mafia ? Alignment::Mafia : Alignment::Village;
}

// Roles that at most one player may hold in the default preset; a second
// public claim of one of these is a counter-claim.
inline bool is_unique_role(Role r) { return r == Role::Doctor || r == Role::Detective; }

std::string to_string(Role r);
std::string to_string(Alignment a);
Role role_from_string(const std::string& s);
Alignment alignment_from_string(const std::string& s);

struct PlayerState {
    int id = 0;
    Role role = Role::Villager;
    bool alive = true;
};

struct GameConfig {
    int num_players = 6;
    std::map<Role, int> role_counts = {
        {Role::Villager, 2}, {Role::Doctor, 1}, {Role::Detective, 1}, {Role::Mafia, 2}};
    int discussion_rounds_per_day = 2;
    int max_days = 10;
    std::uint64_t seed = 0;

    int count(Role r) const {
        auto it = role_counts.find(r);
        return it == role_counts.end() ? 0 : it->second;
    }

    // Throws RuleError{BadConfig} when counts are inconsistent.
    void validate() const;
};

inline GameConfig default_preset(std::uint64_t seed = 0) {
    GameConfig cfg;
    cfg.seed = seed;
    return cfg;
}

enum class DayStage { Discussion, Voting };

struct Phase {
    enum class Kind { Night, Day, Ended };

    Kind kind = Kind::Night;
    int day = 0;
    DayStage stage = DayStage::Discussion; // meaningful for Day only
    Alignment winner = Alignment::Village; // meaningful for Ended only

    static Phase night(int day) { return {Kind::Night, day, DayStage::Discussion, Alignment::Village}; }
    static Phase day_phase(int day, DayStage s) { return {Kind::Day, day, s, Alignment::Village}; }
    static Phase ended(Alignment w, int day) { return {Kind::Ended, day, DayStage::Discussion, w}; }

    bool is_night() const { return kind == Kind::Night; }
    bool is_day(DayStage s) const { return kind == Kind::Day && stage == s; }
    bool is_ended() const { return kind == Kind::Ended; }

    std::string label() const;

    friend bool operator==(const Phase& a, const Phase& b) {
        if (a.kind != b.kind || a.day != b.day) return false;
        if (a.kind == Kind::Day && a.stage != b.stage) return false;
        if (a.kind == Kind::Ended && a.winner != b.winner) return false;
        return true;
    }
};

struct RuleError : std::runtime_error {
    enum class Code {
        BadConfig,
        WrongPhase,
        DeadActor,
        RoleMismatch,
        IllegalTarget,
        UnknownPlayer,
        BadSequence,
        BadArgument,
    };

    RuleError(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
    Code code;
};

enum class NightActionKind { Kill, Protect, Investigate };

struct NightAction {
    NightActionKind kind = NightActionKind::Kill;
    int target = -1;
};

std::string to_string(NightActionKind k);
NightActionKind night_action_from_string(const std::string& s);

} // namespace mafia
