#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mafia/core/game.hpp"

namespace mafia {

// Complete record of one match: enough to re-run the game bit for bit.
struct Transcript {
    GameConfig config;
    std::vector<Role> roles;            // per seat
    std::vector<std::string> seat_specs; // agent spec per seat (may be empty)
    std::optional<Alignment> winner;
    std::vector<Event> events;

    std::string to_jsonl() const;
    static Transcript from_jsonl(const std::string& text);
};

void write_transcript(const Transcript& t, const std::string& path);
Transcript read_transcript(const std::string& path);

struct Divergence {
    int seq = -1;
    std::string note;
};

struct ReplayReport {
    bool ok = false;
    std::vector<Divergence> divergences;
    std::optional<Alignment> replayed_winner;

    std::string summary() const;
};

// Re-executes the recorded inputs (night submissions, statements, votes,
// resolution triggers) through a fresh engine and compares every emitted
// event against the record.
ReplayReport replay_transcript(const Transcript& t);

// Same drive, but hands back the rebuilt state; nullopt (with the report
// populated, when given) if the record cannot be reproduced.
std::optional<GameState> rebuild_state(const Transcript& t, ReplayReport* report = nullptr);

} // namespace mafia
