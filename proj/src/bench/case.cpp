#include "mafia/bench/case.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace mafia::bench {

namespace fs = std::filesystem;
using nlohmann::json;

json BenchmarkCase::to_json() const {
    json cfg;
    mafia::to_json(cfg, config);
    json truth = json::object();
    for (const auto& [player, role] : ground_truth) {
        truth[std::to_string(player)] = to_string(role);
    }
    json events_j = json::array();
    for (const auto& e : events) {
        json je;
        mafia::to_json(je, e);
        events_j.push_back(std::move(je));
    }
    json roster = json::array();
    for (int p = 0; p < config.num_players; ++p) roster.push_back("P" + std::to_string(p));
    return {{"id", id},
            {"tags", tags},
            {"roster", roster},
            {"config", cfg},
            {"ground_truth", truth},
            {"evaluated_seat", evaluated_seat},
            {"events", events_j},
            {"private_facts", private_facts},
            {"explanation", explanation}};
}

BenchmarkCase BenchmarkCase::from_json(const json& j) {
    BenchmarkCase c;
    const std::string ref = j.contains("id") && j.at("id").is_string()
                                ? j.at("id").get<std::string>()
                                : std::string("<unnamed>");
    auto need = [&](const char* field) -> const json& {
        if (!j.contains(field)) throw CaseLoadError(ref, field, "missing");
        return j.at(field);
    };
    try {
        c.id = need("id").get<std::string>();
        c.tags = need("tags").get<std::vector<std::string>>();
        mafia::from_json(need("config"), c.config);
        for (const auto& [key, value] : need("ground_truth").items()) {
            c.ground_truth[std::stoi(key)] = role_from_string(value.get<std::string>());
        }
        c.evaluated_seat = need("evaluated_seat").get<int>();
        for (const auto& je : need("events")) {
            Event e;
            mafia::from_json(je, e);
            c.events.push_back(std::move(e));
        }
        c.private_facts = need("private_facts").get<std::vector<std::string>>();
        c.explanation = need("explanation").get<std::string>();
    } catch (const CaseLoadError&) {
        throw;
    } catch (const std::exception& e) {
        throw CaseLoadError(ref, "<parse>", e.what());
    }
    return c;
}

Transcript case_transcript(const BenchmarkCase& c) {
    Transcript t;
    t.config = c.config;
    t.roles.resize(static_cast<std::size_t>(c.config.num_players), Role::Villager);
    for (const auto& [player, role] : c.ground_truth) {
        if (player >= 0 && player < c.config.num_players) {
            t.roles[static_cast<std::size_t>(player)] = role;
        }
    }
    t.events = c.events;
    for (const auto& e : c.events) {
        if (const auto* g = e.get<ev::GameEnded>()) t.winner = g->winner;
    }
    return t;
}

void validate_case(const BenchmarkCase& c) {
    if (c.id.empty()) throw CaseLoadError("<unnamed>", "id", "empty");
    try {
        c.config.validate();
    } catch (const RuleError& e) {
        throw CaseLoadError(c.id, "config", e.what());
    }
    for (int p = 0; p < c.config.num_players; ++p) {
        if (!c.ground_truth.count(p)) {
            throw CaseLoadError(c.id, "ground_truth", "missing entry for P" + std::to_string(p));
        }
    }
    if (static_cast<int>(c.ground_truth.size()) != c.config.num_players) {
        throw CaseLoadError(c.id, "ground_truth", "entries outside the roster");
    }
    if (c.evaluated_seat < 0 || c.evaluated_seat >= c.config.num_players) {
        throw CaseLoadError(c.id, "evaluated_seat", "outside roster");
    }
    if (c.events.empty()) throw CaseLoadError(c.id, "events", "empty");

    static const std::set<std::string> kKnownTags = {
        "conflicting-claims", "hallucination", "no-kill-night", "strategic-deception"};
    for (const auto& tag : c.tags) {
        if (!kKnownTags.count(tag)) throw CaseLoadError(c.id, "tags", "unknown tag " + tag);
    }

    ReplayReport report;
    if (!rebuild_state(case_transcript(c), &report)) {
        throw CaseLoadError(c.id, "events", "does not replay: " + report.summary());
    }
}

Observation case_observation(const BenchmarkCase& c) {
    auto state = rebuild_state(case_transcript(c));
    if (!state) {
        throw CaseLoadError(c.id, "events", "does not replay");
    }
    return state->observation_for(c.evaluated_seat);
}

std::vector<BenchmarkCase> load_cases(const std::string& path) {
    std::vector<fs::path> files;
    fs::path p(path);
    if (fs::is_directory(p)) {
        for (const auto& entry : fs::directory_iterator(p)) {
            if (entry.path().extension() == ".json") files.push_back(entry.path());
        }
    } else if (fs::exists(p)) {
        files.push_back(p);
    } else {
        throw CaseLoadError(path, "<path>", "does not exist");
    }

    std::vector<BenchmarkCase> cases;
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) throw CaseLoadError(file.string(), "<file>", "unreadable");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw CaseLoadError(file.string(), "<json>", e.what());
        }
        BenchmarkCase c = BenchmarkCase::from_json(j);
        validate_case(c);
        cases.push_back(std::move(c));
    }
    std::sort(cases.begin(), cases.end(),
              [](const BenchmarkCase& a, const BenchmarkCase& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < cases.size(); ++i) {
        if (cases[i].id == cases[i - 1].id) {
            throw CaseLoadError(cases[i].id, "id", "duplicate case id");
        }
    }
    return cases;
}

void write_case_files(const std::vector<BenchmarkCase>& cases, const std::string& dir) {
    fs::create_directories(dir);
    for (const auto& c : cases) {
        std::ofstream out(fs::path(dir) / (c.id + ".json"));
        out << c.to_json().dump(2) << '\n';
    }
}

} // namespace mafia::bench
