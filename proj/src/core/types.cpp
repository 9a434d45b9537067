#include "mafia/core/types.hpp"

namespace mafia {

std::string to_string(Role r) {
    switch (r) {
    case Role::Villager: return "villager";
    case Role::Doctor: return "doctor";
    case Role::Detective: return "detective";
    case Role::Mafia: return "mafia";
    }
    return "villager";
}

std::string to_string(Alignment a) {
    return a == Alignment::Mafia ? "mafia" : "village";
}

Role role_from_string(const std::string& s) {
    if (s == "villager") return Role::Villager;
    if (s == "doctor") return Role::Doctor;
    if (s == "detective") return Role::Detective;
    if (s == "mafia") return Role::Mafia;
    throw RuleError(RuleError::Code::BadArgument, "unknown role: " + s);
}

Alignment alignment_from_string(const std::string& s) {
    if (s == "village") return Alignment::Village;
    if (s == "mafia") return Alignment::Mafia;
    throw RuleError(RuleError::Code::BadArgument, "unknown alignment: " + s);
}

std::string to_string(NightActionKind k) {
    switch (k) {
    case NightActionKind::Kill: return "kill";
    case NightActionKind::Protect: return "protect";
    case NightActionKind::Investigate: return "investigate";
    }
    return "kill";
}

NightActionKind night_action_from_string(const std::string& s) {
    if (s == "kill") return NightActionKind::Kill;
    if (s == "protect") return NightActionKind::Protect;
    if (s == "investigate") return NightActionKind::Investigate;
    throw RuleError(RuleError::Code::BadArgument, "unknown night action: " + s);
}

std::string Phase::label() const {
    switch (kind) {
    case Kind::Night: return "night";
    case Kind::Day: return stage == DayStage::Discussion ? "day-discussion" : "day-voting";
    case Kind::Ended: return "ended";
    }
    return "night";
}

void GameConfig::validate() const {
    if (num_players < 3) {
        throw RuleError(RuleError::Code::BadConfig, "need at least 3 players");
    }
    int total = 0;
    for (const auto& [role, n] : role_counts) {
        if (n < 0) throw RuleError(RuleError::Code::BadConfig, "negative role count");
        total += n;
    }
    if (total != num_players) {
        throw RuleError(RuleError::Code::BadConfig,
                        "role counts sum to " + std::to_string(total) + ", expected " +
                            std::to_string(num_players));
    }
    int mafia = count(Role::Mafia);
    if (mafia < 1) {
        throw RuleError(RuleError::Code::BadConfig, "need at least one mafia member");
    }
    if (mafia >= num_players - mafia) {
        throw RuleError(RuleError::Code::BadConfig,
                        "mafia must start strictly outnumbered by the village");
    }
    if (count(Role::Doctor) > 1 || count(Role::Detective) > 1) {
        throw RuleError(RuleError::Code::BadConfig, "at most one doctor and one detective");
    }
    if (discussion_rounds_per_day < 0) {
        throw RuleError(RuleError::Code::BadConfig, "discussion rounds must be >= 0");
    }
    if (max_days < 1) {
        throw RuleError(RuleError::Code::BadConfig, "max_days must be >= 1");
    }
}

} // namespace mafia
