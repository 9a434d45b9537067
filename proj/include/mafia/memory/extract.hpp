#pragma once

#include <string>
#include <vector>

#include "mafia/sag/acts.hpp"

namespace mafia::mem {

// Deterministic lexical statement reader. Resolves "P3" / "Player 3" /
// "myself" style references against the roster and emits structured acts for
// a small set of canonical accusation / defense / claim patterns. Text it
// cannot resolve yields no acts; it never guesses. Pure function of
// (text, roster_size, speaker); day/turn stamps are applied by the caller.
std::vector<sag::SocialAct> extract_acts(const std::string& text, int roster_size, int speaker);

// Stamps (day, turn) onto extracted acts.
std::vector<sag::SocialAct> stamp_acts(std::vector<sag::SocialAct> acts, int day, int turn);

} // namespace mafia::mem
