#include "mafia/core/events.hpp"

#include <array>

namespace mafia {

namespace {

constexpr std::array<const char*, 10> kEventNames = {
    "game_started",     "night_action_submitted", "protection_applied", "investigation_result",
    "night_resolved",   "statement_made",         "vote_cast",          "votes_resolved",
    "player_eliminated", "game_ended",
};

} // namespace

std::string to_string(EventKind k) { return kEventNames[static_cast<std::size_t>(k)]; }

EventKind event_kind_from_string(const std::string& s) {
    for (std::size_t i = 0; i < kEventNames.size(); ++i) {
        if (s == kEventNames[i]) return static_cast<EventKind>(i);
    }
    throw RuleError(RuleError::Code::BadArgument, "unknown event kind: " + s);
}

void to_json(nlohmann::json& j, const GameConfig& c) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [role, n] : c.role_counts) counts[to_string(role)] = n;
    j = {{"num_players", c.num_players},
         {"role_counts", counts},
         {"discussion_rounds_per_day", c.discussion_rounds_per_day},
         {"max_days", c.max_days},
         {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, GameConfig& c) {
    c.num_players = j.at("num_players").get<int>();
    c.role_counts.clear();
    for (const auto& [key, value] : j.at("role_counts").items()) {
        c.role_counts[role_from_string(key)] = value.get<int>();
    }
    c.discussion_rounds_per_day = j.at("discussion_rounds_per_day").get<int>();
    c.max_days = j.at("max_days").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
}

namespace {

nlohmann::json payload_json(const ev::Payload& p) {
    using nlohmann::json;
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ev::GameStarted>) {
                json cfg;
                to_json(cfg, v.config);
                return {{"config", cfg}};
            } else if constexpr (std::is_same_v<T, ev::NightActionSubmitted>) {
                return {{"actor", v.actor}, {"action", to_string(v.action)}, {"target", v.target}};
            } else if constexpr (std::is_same_v<T, ev::ProtectionApplied>) {
                return json::object();
            } else if constexpr (std::is_same_v<T, ev::InvestigationResult>) {
                return {{"detective", v.detective},
                        {"target", v.target},
                        {"alignment", to_string(v.alignment)}};
            } else if constexpr (std::is_same_v<T, ev::NightResolved>) {
                return {{"death", v.death ? json(*v.death) : json(nullptr)}};
            } else if constexpr (std::is_same_v<T, ev::StatementMade>) {
                return {{"speaker", v.speaker}, {"text", v.text}, {"acts", v.acts}};
            } else if constexpr (std::is_same_v<T, ev::VoteCast>) {
                return {{"voter", v.voter}, {"target", v.target}};
            } else if constexpr (std::is_same_v<T, ev::VotesResolved>) {
                return {{"eliminated", v.eliminated ? json(*v.eliminated) : json(nullptr)}};
            } else if constexpr (std::is_same_v<T, ev::PlayerEliminated>) {
                return {{"player", v.player}, {"role", to_string(v.revealed_role)}};
            } else {
                static_assert(std::is_same_v<T, ev::GameEnded>);
                return {{"winner", to_string(v.winner)}};
            }
        },
        p);
}

ev::Payload payload_from_json(EventKind kind, const nlohmann::json& j) {
    switch (kind) {
    case EventKind::GameStarted: {
        ev::GameStarted v;
        from_json(j.at("config"), v.config);
        return v;
    }
    case EventKind::NightActionSubmitted: {
        ev::NightActionSubmitted v;
        v.actor = j.at("actor").get<int>();
        v.action = night_action_from_string(j.at("action").get<std::string>());
        v.target = j.at("target").get<int>();
        return v;
    }
    case EventKind::ProtectionApplied:
        return ev::ProtectionApplied{};
    case EventKind::InvestigationResult: {
        ev::InvestigationResult v;
        v.detective = j.at("detective").get<int>();
        v.target = j.at("target").get<int>();
        v.alignment = alignment_from_string(j.at("alignment").get<std::string>());
        return v;
    }
    case EventKind::NightResolved: {
        ev::NightResolved v;
        if (!j.at("death").is_null()) v.death = j.at("death").get<int>();
        return v;
    }
    case EventKind::StatementMade: {
        ev::StatementMade v;
        v.speaker = j.at("speaker").get<int>();
        v.text = j.at("text").get<std::string>();
        v.acts = j.at("acts").get<std::vector<sag::SocialAct>>();
        return v;
    }
    case EventKind::VoteCast: {
        ev::VoteCast v;
        v.voter = j.at("voter").get<int>();
        v.target = j.at("target").get<int>();
        return v;
    }
    case EventKind::VotesResolved: {
        ev::VotesResolved v;
        if (!j.at("eliminated").is_null()) v.eliminated = j.at("eliminated").get<int>();
        return v;
    }
    case EventKind::PlayerEliminated: {
        ev::PlayerEliminated v;
        v.player = j.at("player").get<int>();
        v.revealed_role = role_from_string(j.at("role").get<std::string>());
        return v;
    }
    case EventKind::GameEnded: {
        ev::GameEnded v;
        v.winner = alignment_from_string(j.at("winner").get<std::string>());
        return v;
    }
    }
    throw RuleError(RuleError::Code::BadArgument, "bad event kind");
}

} // namespace

void to_json(nlohmann::json& j, const Event& e) {
    j = {{"seq", e.seq},
         {"day", e.day},
         {"phase", e.phase},
         {"kind", to_string(e.kind)},
         {"visibility", e.visibility},
         {"payload", payload_json(e.payload)}};
}

void from_json(const nlohmann::json& j, Event& e) {
    e.seq = j.at("seq").get<int>();
    e.day = j.at("day").get<int>();
    e.phase = j.at("phase").get<std::string>();
    e.kind = event_kind_from_string(j.at("kind").get<std::string>());
    e.visibility = j.at("visibility").get<std::vector<int>>();
    e.payload = payload_from_json(e.kind, j.at("payload"));
}

} // namespace mafia
