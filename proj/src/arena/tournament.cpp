#include "mafia/arena/tournament.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "mafia/util/rng.hpp"

namespace mafia::arena {

namespace fs = std::filesystem;

std::vector<std::string> rotate_seats(const std::vector<std::string>& specs, int num_seats,
                                      std::uint64_t game_seed) {
    std::vector<std::string> seats;
    seats.reserve(static_cast<std::size_t>(num_seats));
    for (int i = 0; i < num_seats; ++i) {
        seats.push_back(specs[static_cast<std::size_t>(i) % specs.size()]);
    }
    Rng rng(derive_seed(game_seed, 0xD1CEu));
    rng.shuffle(seats);
    return seats;
}

TournamentResult run_tournament(const std::vector<std::string>& specs, int n_games,
                                std::uint64_t seed, const TournamentOptions& options,
                                const AgentFactory& factory) {
    if (specs.size() < 2) {
        throw RuleError(RuleError::Code::BadArgument, "a tournament needs at least two agent specs");
    }
    options.base_game.validate();

    TournamentResult result;
    for (const auto& spec : specs) result.ratings.emplace(spec, Rating{});

    std::vector<std::optional<Transcript>> transcripts(static_cast<std::size_t>(n_games));
    std::atomic<int> next{0};
    std::atomic<int> failed{0};

    auto worker = [&] {
        for (;;) {
            int g = next.fetch_add(1);
            if (g >= n_games) return;
            MatchConfig mc;
            mc.game = options.base_game;
            mc.seed = derive_seed(seed, static_cast<std::uint64_t>(g));
            mc.seats = rotate_seats(specs, options.base_game.num_players, mc.seed);
            try {
                transcripts[static_cast<std::size_t>(g)] = run_match(mc, factory);
            } catch (const std::exception& e) {
                failed.fetch_add(1);
                std::cerr << "game " << g << " failed: " << e.what() << "\n";
            }
        }
    };

    const int workers = std::max(1, options.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (!options.out_dir.empty()) fs::create_directories(options.out_dir);

    // Single aggregator, deterministic game order.
    for (int g = 0; g < n_games; ++g) {
        const auto& t = transcripts[static_cast<std::size_t>(g)];
        if (!t) continue;
        update_ratings(result.ratings, *t);
        ++result.games_completed;
        if (!options.out_dir.empty()) {
            std::string name = "game_" + std::to_string(g) + ".jsonl";
            write_transcript(*t, (fs::path(options.out_dir) / name).string());
            result.artifacts.push_back(name);
        }
    }
    result.games_failed = failed.load();
    result.board = leaderboard(result.ratings, options.leaderboard_k);

    if (!options.out_dir.empty()) {
        nlohmann::json board_j = nlohmann::json::array();
        for (const auto& row : result.board) {
            board_j.push_back({{"spec", row.spec},
                               {"mu", row.rating.mu},
                               {"sigma", row.rating.sigma},
                               {"games", row.rating.games},
                               {"display", row.display}});
        }
        nlohmann::json out = {{"ratings", ratings_to_json(result.ratings)},
                              {"leaderboard", board_j}};
        std::ofstream f(fs::path(options.out_dir) / "leaderboard.json");
        f << out.dump(2) << '\n';
        result.artifacts.push_back("leaderboard.json");
        write_manifest(options.out_dir, result.artifacts);
    }
    return result;
}

void write_manifest(const std::string& out_dir, const std::vector<std::string>& files) {
    nlohmann::json j = {{"files", files}};
    std::ofstream f(fs::path(out_dir) / "manifest.json");
    f << j.dump(2) << '\n';
}

} // namespace mafia::arena
