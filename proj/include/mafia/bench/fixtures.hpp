#pragma once

#include <vector>

#include "mafia/bench/case.hpp"

namespace mafia::bench {

// The bundled 13-case suite. Every case is generated by scripting the real
// engine, so the recorded events replay cleanly by construction. Covers
// conflicting claims, hallucinated references, no-kill nights and deception
// patterns, in several mixes.
std::vector<BenchmarkCase> builtin_cases();

} // namespace mafia::bench
