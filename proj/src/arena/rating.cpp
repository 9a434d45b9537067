#include "mafia/arena/rating.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace mafia::arena {

namespace {

double normal_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014327;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// phi/Phi with the asymptote for deep negative t, where the ratio tends to -t.
double mean_shift(double t) {
    if (t < -6.0) return -t;
    double denom = normal_cdf(t);
    if (denom < 1e-300) return -t;
    return normal_pdf(t) / denom;
}

} // namespace

void update_ratings(RatingTable& table, const Transcript& t, const RatingParams& params) {
    if (!t.winner) return;
    if (t.seat_specs.size() != t.roles.size()) {
        throw RuleError(RuleError::Code::BadArgument, "transcript lacks seat specs for rating");
    }

    const int n = static_cast<int>(t.roles.size());
    std::vector<Rating> seat_rating(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        seat_rating[static_cast<std::size_t>(i)] = table[t.seat_specs[static_cast<std::size_t>(i)]];
    }

    double c2 = 0.0, mu_win = 0.0, mu_lose = 0.0;
    for (int i = 0; i < n; ++i) {
        const Rating& r = seat_rating[static_cast<std::size_t>(i)];
        c2 += params.beta * params.beta + r.sigma * r.sigma;
        const bool on_winning_team = alignment_of(t.roles[static_cast<std::size_t>(i)]) == *t.winner;
        (on_winning_team ? mu_win : mu_lose) += r.mu;
    }
    const double c = std::sqrt(c2);
    const double tt = (mu_win - mu_lose) / c;
    const double v = mean_shift(tt);
    const double w = std::clamp(v * (v + tt), 0.0, 1.0 - 1e-9);

    std::map<std::string, double> delta_mu;
    std::map<std::string, double> var_factor;
    std::set<std::string> seen;
    for (int i = 0; i < n; ++i) {
        const std::string& spec = t.seat_specs[static_cast<std::size_t>(i)];
        const Rating& r = seat_rating[static_cast<std::size_t>(i)];
        const bool won = alignment_of(t.roles[static_cast<std::size_t>(i)]) == *t.winner;
        const double shift = (r.sigma * r.sigma / c) * v;
        delta_mu[spec] += won ? shift : -shift;
        const double factor = std::max(params.sigma_floor, 1.0 - (r.sigma * r.sigma / c2) * w);
        var_factor.count(spec) ? var_factor[spec] *= factor : var_factor[spec] = factor;
        seen.insert(spec);
    }

    for (const auto& spec : seen) {
        Rating& r = table[spec];
        r.mu += delta_mu[spec];
        r.sigma = std::max(params.sigma_floor, r.sigma * std::sqrt(var_factor[spec]));
        r.games += 1;
    }
}

std::vector<LeaderboardRow> leaderboard(const RatingTable& table, double k) {
    std::vector<LeaderboardRow> rows;
    for (const auto& [spec, rating] : table) {
        rows.push_back({spec, rating, rating.mu - k * rating.sigma});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const LeaderboardRow& a, const LeaderboardRow& b) {
        if (a.display != b.display) return a.display > b.display;
        return a.spec < b.spec;
    });
    return rows;
}

nlohmann::json ratings_to_json(const RatingTable& table) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [spec, r] : table) {
        j[spec] = {{"mu", r.mu}, {"sigma", r.sigma}, {"games", r.games}};
    }
    return j;
}

RatingTable ratings_from_json(const nlohmann::json& j) {
    RatingTable table;
    for (const auto& [spec, v] : j.items()) {
        table[spec] = {v.at("mu").get<double>(), v.at("sigma").get<double>(),
                       v.at("games").get<int>()};
    }
    return table;
}

} // namespace mafia::arena
