#pragma once

#include <set>
#include <vector>

#include "mafia/core/events.hpp"
#include "mafia/core/types.hpp"

namespace mafia {

// One seat's filtered view of the game. Never contains another player's role
// (except public post-mortem reveals inside events) and never a private event
// whose visibility set excludes the viewer. Mafia seats additionally learn
// their teammates.
struct Observation {
    int viewer = -1;
    Role viewer_role = Role::Villager;
    int num_players = 0;
    GameConfig config;
    Phase phase;
    std::set<int> living;
    std::vector<Event> public_events;
    std::vector<Event> private_events;
    std::vector<int> mafia_partners; // empty unless viewer is Mafia

    // Public and private events interleaved in log order.
    std::vector<Event> all_events() const {
        std::vector<Event> out;
        out.reserve(public_events.size() + private_events.size());
        std::size_t i = 0, j = 0;
        while (i < public_events.size() || j < private_events.size()) {
            if (j == private_events.size() ||
                (i < public_events.size() && public_events[i].seq < private_events[j].seq)) {
                out.push_back(public_events[i++]);
            } else {
                out.push_back(private_events[j++]);
            }
        }
        return out;
    }
};

} // namespace mafia
