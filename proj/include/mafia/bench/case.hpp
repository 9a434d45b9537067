#pragma once

#include <map>
#include <string>
#include <vector>

#include "mafia/core/transcript.hpp"

#include "json.hpp"

namespace mafia::bench {

// One curated scenario: a replayable event slice, the seat under evaluation,
// and the hidden truth to score against.
struct BenchmarkCase {
    std::string id;
    std::vector<std::string> tags; // conflicting-claims, hallucination,
                                   // no-kill-night, strategic-deception
    GameConfig config;
    std::map<int, Role> ground_truth;  // role per seat, whole roster
    int evaluated_seat = 0;
    std::vector<Event> events;         // full log incl. private events
    std::vector<std::string> private_facts; // the seat's own knowledge, spelled out
    std::string explanation;           // why the truth is what it is

    nlohmann::json to_json() const;
    static BenchmarkCase from_json(const nlohmann::json& j);
};

struct CaseLoadError : std::runtime_error {
    CaseLoadError(std::string case_ref, std::string field, const std::string& msg)
        : std::runtime_error("case '" + case_ref + "', field '" + field + "': " + msg),
          case_ref(std::move(case_ref)), field(std::move(field)) {}
    std::string case_ref;
    std::string field;
};

// Reads every *.json under `path` (or `path` itself when it is a file),
// validates each case, returns them ordered by id.
std::vector<BenchmarkCase> load_cases(const std::string& path);

// Schema checks plus an engine replay of the recorded events.
void validate_case(const BenchmarkCase& c);

// Transcript view of the case (mid-game slices have no winner).
Transcript case_transcript(const BenchmarkCase& c);

// Engine state rebuilt from the case, viewed from the evaluated seat.
Observation case_observation(const BenchmarkCase& c);

void write_case_files(const std::vector<BenchmarkCase>& cases, const std::string& dir);

} // namespace mafia::bench
