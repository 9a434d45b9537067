#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mafia/arena/match.hpp"
#include "mafia/arena/rating.hpp"

namespace mafia::arena {

struct TournamentOptions {
    int workers = 1;
    std::string out_dir;          // transcripts + leaderboard land here when set
    GameConfig base_game;         // preset used for every match
    double leaderboard_k = 3.0;
};

struct TournamentResult {
    RatingTable ratings;
    std::vector<LeaderboardRow> board;
    int games_completed = 0;
    int games_failed = 0;
    std::vector<std::string> artifacts; // files written under out_dir
};

// Runs n seeded matches with per-game seat rotation over the given specs.
// Matches may execute on a worker pool; ratings are folded in game order so
// the result is independent of scheduling.
TournamentResult run_tournament(const std::vector<std::string>& specs, int n_games,
                                std::uint64_t seed, const TournamentOptions& options = {},
                                const AgentFactory& factory = default_agent_factory());

// Seat assignment for one game: specs are dealt round-robin then shuffled, so
// every spec plays all roles over time.
std::vector<std::string> rotate_seats(const std::vector<std::string>& specs, int num_seats,
                                      std::uint64_t game_seed);

void write_manifest(const std::string& out_dir, const std::vector<std::string>& files);

} // namespace mafia::arena
