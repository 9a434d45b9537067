#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "mafia/arena/tournament.hpp"
#include "mafia/bench/fixtures.hpp"
#include "mafia/bench/suite.hpp"

namespace fs = std::filesystem;
using namespace mafia;

namespace {

struct CliConfig {
    GameConfig game = default_preset();
    std::vector<std::string> seats;
};

CliConfig load_cli_config(const std::string& path) {
    CliConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    nlohmann::json j;
    in >> j;
    if (j.contains("game")) from_json(j.at("game"), cfg.game);
    if (j.contains("seats")) cfg.seats = j.at("seats").get<std::vector<std::string>>();
    return cfg;
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::shared_ptr<agent::TextBackend> backend_from_env(const std::string& trace_path) {
    std::shared_ptr<agent::TraceLog> trace;
    if (!trace_path.empty()) trace = std::make_shared<agent::TraceLog>(trace_path);
    return std::shared_ptr<agent::TextBackend>(agent::HttpBackend::from_env(trace));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secret Mafia arena: engine, agents, benchmark and ratings"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", trace_path;
    std::uint64_t seed = 1;

    // play
    auto* play = app.add_subcommand("play", "Run one match and write its transcript");
    std::string play_agents = "revac8";
    play->add_option("--config", config_path, "JSON config file (game preset + seats)");
    play->add_option("--agents", play_agents, "comma-separated agent specs cycled over seats");
    play->add_option("--seed", seed, "match seed");
    play->add_option("--out", out_dir, "output directory");
    play->add_option("--trace", trace_path, "backend trace file");

    // tournament
    auto* tour = app.add_subcommand("tournament", "Run rated games over a set of agents");
    std::string tour_agents = "revac8,random";
    int n_games = 100;
    int workers = 1;
    tour->add_option("--agents", tour_agents, "comma-separated agent specs")->required();
    tour->add_option("--games", n_games, "number of games");
    tour->add_option("--seed", seed, "tournament seed");
    tour->add_option("--workers", workers, "parallel match workers");
    tour->add_option("--out", out_dir, "output directory");
    tour->add_option("--trace", trace_path, "backend trace file");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Score an agent on the curated case suite");
    std::string cases_path = "data/cases";
    std::string bench_agent = "revac8";
    std::string judge_kind = "stub";
    double min_score = -1.0;
    std::string results_path;
    bench_cmd->add_option("--cases", cases_path, "case directory or file, or 'builtin'");
    bench_cmd->add_option("--agent", bench_agent,
                          "oracle | constant-villager | revac | revac2_1 | revac8");
    bench_cmd->add_option("--judge", judge_kind, "stub | http");
    bench_cmd->add_option("--min-score", min_score, "fail (exit 1) below this mean final score");
    bench_cmd->add_option("--out", results_path, "results JSONL path");
    bench_cmd->add_option("--seed", seed, "agent seed");
    bench_cmd->add_option("--trace", trace_path, "backend trace file");

    // replay
    auto* replay_cmd = app.add_subcommand("replay", "Verify a transcript against the engine");
    std::string transcript_path;
    replay_cmd->add_option("--transcript", transcript_path, "transcript JSONL")->required();

    // export-cases
    auto* export_cmd = app.add_subcommand("export-cases", "Write the bundled cases as JSON files");
    std::string export_dir = "data/cases";
    export_cmd->add_option("--out", export_dir, "destination directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*play) {
            CliConfig cfg = load_cli_config(config_path);
            arena::MatchConfig mc;
            mc.game = cfg.game;
            mc.seed = seed;
            mc.seats = cfg.seats;
            if (mc.seats.empty()) {
                auto specs = split_csv(play_agents);
                for (int i = 0; i < mc.game.num_players; ++i) {
                    mc.seats.push_back(specs[static_cast<std::size_t>(i) % specs.size()]);
                }
            }
            auto backend = backend_from_env(trace_path);
            Transcript t = arena::run_match(mc, arena::default_agent_factory(backend));
            fs::create_directories(out_dir);
            std::string file = (fs::path(out_dir) / "match.jsonl").string();
            write_transcript(t, file);
            arena::write_manifest(out_dir, {"match.jsonl"});
            std::cout << "winner: " << (t.winner ? to_string(*t.winner) : "none") << "\n"
                      << "transcript: " << file << "\n";
            return 0;
        }

        if (*tour) {
            arena::TournamentOptions opts;
            opts.workers = workers;
            opts.out_dir = out_dir;
            opts.base_game = load_cli_config(config_path).game;
            auto backend = backend_from_env(trace_path);
            auto result = arena::run_tournament(split_csv(tour_agents), n_games, seed, opts,
                                                arena::default_agent_factory(backend));
            std::cout << "games completed: " << result.games_completed << " (failed "
                      << result.games_failed << ")\n";
            for (const auto& row : result.board) {
                std::cout << row.spec << "  mu=" << row.rating.mu << " sigma=" << row.rating.sigma
                          << " display=" << row.display << " games=" << row.rating.games << "\n";
            }
            return 0;
        }

        if (*bench_cmd) {
            std::vector<bench::BenchmarkCase> cases = cases_path == "builtin"
                                                          ? bench::builtin_cases()
                                                          : bench::load_cases(cases_path);
            auto backend = backend_from_env(trace_path);
            auto agent = bench::make_case_agent(bench_agent, backend, seed);
            agent::TextBackend* judge = judge_kind == "http" ? backend.get() : nullptr;
            Rng rng(seed);
            auto suite = bench::run_suite(*agent, cases, judge, rng);
            if (!results_path.empty()) bench::write_results(suite, results_path);
            std::cout << "cases: " << suite.results.size() << "\n"
                      << "metric A mean:      " << suite.mean_a << "\n"
                      << "metric B norm mean: " << suite.mean_b_norm << "\n"
                      << "final score mean:   " << suite.mean_final << "\n";
            if (min_score >= 0.0 && suite.mean_final < min_score) {
                std::cerr << "below configured score floor " << min_score << "\n";
                return 1;
            }
            return 0;
        }

        if (*replay_cmd) {
            Transcript t = read_transcript(transcript_path);
            ReplayReport report = replay_transcript(t);
            std::cout << report.summary() << "\n";
            return report.ok ? 0 : 1;
        }

        if (*export_cmd) {
            auto cases = bench::builtin_cases();
            bench::write_case_files(cases, export_dir);
            std::cout << "wrote " << cases.size() << " cases to " << export_dir << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
