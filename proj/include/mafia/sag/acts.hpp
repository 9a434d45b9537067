#pragma once

#include <optional>
#include <vector>

#include "mafia/core/types.hpp"

#include "json.hpp"

namespace mafia::sag {

enum class ActKind { Accuse, Defend, ClaimRole, VoteAlign };

std::string to_string(ActKind k);
ActKind act_kind_from_string(const std::string& s);

// One structured social interaction extracted from table talk (or taken
// directly from a ballot). (day, turn) orders acts within a game; turn is the
// engine event sequence number of the statement or vote that produced it.
struct SocialAct {
    ActKind kind = ActKind::Accuse;
    int src = -1;
    int dst = -1;                      // Accuse/Defend/VoteAlign
    std::optional<Role> role;          // ClaimRole
    std::optional<NightActionKind> via_ability; // ClaimRole implied by an ability description
    std::optional<int> ability_target; // player the described ability was used on
    int day = 0;
    int turn = 0;

    static SocialAct accuse(int src, int dst) { return {ActKind::Accuse, src, dst, {}, {}, {}, 0, 0}; }
    static SocialAct defend(int src, int dst) { return {ActKind::Defend, src, dst, {}, {}, {}, 0, 0}; }
    static SocialAct vote(int src, int dst) { return {ActKind::VoteAlign, src, dst, {}, {}, {}, 0, 0}; }
    static SocialAct claim(int src, Role r) { return {ActKind::ClaimRole, src, -1, r, {}, {}, 0, 0}; }

    SocialAct at(int d, int t) const {
        SocialAct a = *this;
        a.day = d;
        a.turn = t;
        return a;
    }

    friend bool operator==(const SocialAct&, const SocialAct&) = default;
};

void to_json(nlohmann::json& j, const SocialAct& a);
void from_json(const nlohmann::json& j, SocialAct& a);

} // namespace mafia::sag
