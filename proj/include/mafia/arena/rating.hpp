#pragma once

#include <map>
#include <string>
#include <vector>

#include "mafia/core/transcript.hpp"

#include "json.hpp"

namespace mafia::arena {

// Gaussian skill belief per agent spec. Two-team update, win/lose only:
//   c^2   = n*beta^2 + sum(sigma_i^2)           over all n seats
//   t     = (mu_winning_team - mu_losing_team) / c
//   v     = phi(t) / Phi(t)                      (truncated-normal mean shift)
//   w     = v * (v + t)                          in (0, 1)
//   winner seat: mu += (sigma^2 / c) * v; loser seat: mu -= the same amount
//   every seat: sigma^2 *= max(eps, 1 - (sigma^2 / c^2) * w)
// Upsets (negative t for the winner) produce a larger v, hence larger moves;
// sigma shrinks monotonically.
struct Rating {
    double mu = 25.0;
    double sigma = 25.0 / 3.0;
    int games = 0;
};

struct RatingParams {
    double beta = 25.0 / 6.0;
    double sigma_floor = 1e-3;
};

using RatingTable = std::map<std::string, Rating>;

// Applies one finished match to the table. Specs occupying several seats
// accumulate every seat's delta.
void update_ratings(RatingTable& table, const Transcript& t, const RatingParams& params = {});

struct LeaderboardRow {
    std::string spec;
    Rating rating;
    double display = 0.0; // mu - k*sigma
};

std::vector<LeaderboardRow> leaderboard(const RatingTable& table, double k = 3.0);

nlohmann::json ratings_to_json(const RatingTable& table);
RatingTable ratings_from_json(const nlohmann::json& j);

} // namespace mafia::arena
