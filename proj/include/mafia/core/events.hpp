#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mafia/core/types.hpp"
#include "mafia/sag/acts.hpp"

#include "json.hpp"

namespace mafia {

enum class EventKind {
    GameStarted,
    NightActionSubmitted,
    ProtectionApplied,
    InvestigationResult,
    NightResolved,
    StatementMade,
    VoteCast,
    VotesResolved,
    PlayerEliminated,
    GameEnded,
};

std::string to_string(EventKind k);
EventKind event_kind_from_string(const std::string& s);

namespace ev {

struct GameStarted {
    GameConfig config;
};

struct NightActionSubmitted {
    int actor = -1;
    NightActionKind action = NightActionKind::Kill;
    int target = -1;
};

struct ProtectionApplied {};

struct InvestigationResult {
    int detective = -1;
    int target = -1;
    Alignment alignment = Alignment::Village;
};

struct NightResolved {
    std::optional<int> death;
};

struct StatementMade {
    int speaker = -1;
    std::string text;
    std::vector<sag::SocialAct> acts;
};

struct VoteCast {
    int voter = -1;
    int target = -1;
};

struct VotesResolved {
    std::optional<int> eliminated;
};

struct PlayerEliminated {
    int player = -1;
    Role revealed_role = Role::Villager;
};

struct GameEnded {
    Alignment winner = Alignment::Village;
};

using Payload = std::variant<GameStarted, NightActionSubmitted, ProtectionApplied,
                             InvestigationResult, NightResolved, StatementMade, VoteCast,
                             VotesResolved, PlayerEliminated, GameEnded>;

} // namespace ev

// Envelope shared by every log entry. An empty visibility set means public;
// otherwise only the listed seats may observe the event.
struct Event {
    int seq = 0;
    int day = 0;
    std::string phase; // phase label at emission time
    EventKind kind = EventKind::GameStarted;
    std::vector<int> visibility;
    ev::Payload payload;

    bool is_public() const { return visibility.empty(); }

    bool visible_to(int viewer) const {
        return is_public() ||
               std::find(visibility.begin(), visibility.end(), viewer) != visibility.end();
    }

    template <typename T>
    const T* get() const {
        return std::get_if<T>(&payload);
    }
};

void to_json(nlohmann::json& j, const GameConfig& c);
void from_json(const nlohmann::json& j, GameConfig& c);
void to_json(nlohmann::json& j, const Event& e);
void from_json(const nlohmann::json& j, Event& e);

inline bool same_event(const Event& a, const Event& b) {
    nlohmann::json ja, jb;
    to_json(ja, a);
    to_json(jb, b);
    return ja == jb;
}

} // namespace mafia
