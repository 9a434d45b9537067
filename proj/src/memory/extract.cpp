#include "mafia/memory/extract.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace mafia::mem {

namespace {

struct Token {
    std::string text;
    std::optional<int> player; // set when the token is a player reference
};

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '\'';
}

// Lowercased word tokens; "player 3" is folded into a single "p3" token.
std::vector<Token> tokenize(const std::string& text, int roster_size, int speaker) {
    std::vector<std::string> words;
    std::string cur;
    for (char c : text) {
        if (is_word_char(c)) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!cur.empty()) {
            words.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) words.push_back(cur);

    auto parse_number = [](const std::string& s) -> std::optional<int> {
        if (s.empty() || s.size() > 3) return std::nullopt;
        int n = 0;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
            n = n * 10 + (c - '0');
        }
        return n;
    };

    std::vector<Token> tokens;
    for (std::size_t i = 0; i < words.size(); ++i) {
        const std::string& w = words[i];
        Token t{w, std::nullopt};
        if (w == "player" && i + 1 < words.size()) {
            if (auto n = parse_number(words[i + 1]); n && *n < roster_size) {
                t.text = "p" + words[i + 1];
                t.player = *n;
                ++i;
            }
        } else if (w.size() >= 2 && w[0] == 'p') {
            if (auto n = parse_number(w.substr(1)); n && *n < roster_size) t.player = *n;
        } else if (w == "me" || w == "myself" || w == "self") {
            t.player = speaker;
        }
        tokens.push_back(std::move(t));
    }
    return tokens;
}

bool any_of(const std::string& w, std::initializer_list<const char*> set) {
    return std::any_of(set.begin(), set.end(), [&](const char* s) { return w == s; });
}

bool negated_before(const std::vector<Token>& ts, std::size_t i) {
    for (std::size_t back = 1; back <= 2 && back <= i; ++back) {
        const std::string& w = ts[i - back].text;
        if (any_of(w, {"not", "don't", "dont", "never", "no"})) return true;
    }
    return false;
}

// Ability verbs are only attributed to the speaker when spoken in first
// person ("I protected P3", "I was investigating P0"); "P0 saved me" is
// somebody else's action.
bool first_person_before(const std::vector<Token>& ts, std::size_t i) {
    for (std::size_t back = 1; back <= 2 && back <= i; ++back) {
        const std::string& w = ts[i - back].text;
        if (w == "i" || w == "i've" || w == "i'd") return true;
    }
    return false;
}

std::optional<int> ref_within(const std::vector<Token>& ts, std::size_t from, std::size_t window) {
    for (std::size_t i = from; i < ts.size() && i < from + window; ++i) {
        if (ts[i].player) return ts[i].player;
    }
    return std::nullopt;
}

std::optional<Role> role_word(const std::string& w) {
    if (w == "villager") return Role::Villager;
    if (w == "doctor") return Role::Doctor;
    if (w == "detective") return Role::Detective;
    if (w == "mafia") return Role::Mafia;
    return std::nullopt;
}

} // namespace

std::vector<sag::SocialAct> extract_acts(const std::string& text, int roster_size, int speaker) {
    using sag::SocialAct;
    std::vector<SocialAct> acts;
    auto emit = [&](SocialAct a) {
        if ((a.kind == sag::ActKind::Accuse || a.kind == sag::ActKind::Defend) && a.src == a.dst) {
            return; // self-directed edges carry no information
        }
        if (std::find(acts.begin(), acts.end(), a) == acts.end()) acts.push_back(a);
    };

    const auto ts = tokenize(text, roster_size, speaker);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string& w = ts[i].text;

        // "I am (the) <role>" / "I'm a <role>"
        if ((w == "am" || w == "i'm" || w == "im") && !negated_before(ts, i)) {
            bool first_person = w != "am" || (i > 0 && ts[i - 1].text == "i");
            if (first_person) {
                for (std::size_t k = i + 1; k < ts.size() && k <= i + 3; ++k) {
                    if (auto r = role_word(ts[k].text)) {
                        emit(SocialAct::claim(speaker, *r));
                        break;
                    }
                    if (!any_of(ts[k].text, {"the", "a", "an", "just", "really", "actually"})) break;
                }
            }
        }

        // Ability descriptions: "protected P3", "saved myself",
        // "checked/investigated P2 (as mafia)"
        if (any_of(w, {"protected", "protecting", "saved", "saving", "healed"}) &&
            first_person_before(ts, i) && !negated_before(ts, i)) {
            if (auto target = ref_within(ts, i + 1, 2)) {
                SocialAct claim = SocialAct::claim(speaker, Role::Doctor);
                claim.via_ability = NightActionKind::Protect;
                claim.ability_target = *target;
                emit(claim);
                emit(SocialAct::defend(speaker, *target));
            }
        }
        if (any_of(w, {"checked", "investigated", "investigating", "checking"}) &&
            first_person_before(ts, i) && !negated_before(ts, i)) {
            if (auto target = ref_within(ts, i + 1, 2)) {
                SocialAct claim = SocialAct::claim(speaker, Role::Detective);
                claim.via_ability = NightActionKind::Investigate;
                claim.ability_target = *target;
                emit(claim);
                // "checked P3 as mafia" / "checked P3 as town"
                for (std::size_t k = i + 2; k < ts.size() && k <= i + 4; ++k) {
                    if (any_of(ts[k].text, {"mafia", "guilty"})) {
                        emit(SocialAct::accuse(speaker, *target));
                        break;
                    }
                    if (any_of(ts[k].text, {"town", "clear", "innocent", "village"})) {
                        emit(SocialAct::defend(speaker, *target));
                        break;
                    }
                }
            }
        }

        // "<X> is (the) mafia / sus / lying" and "<X> is town / innocent"
        if (ts[i].player && i + 1 < ts.size() && ts[i + 1].text == "is") {
            for (std::size_t k = i + 2; k < ts.size() && k <= i + 4; ++k) {
                const std::string& kw = ts[k].text;
                if (any_of(kw, {"mafia", "sus", "suspicious", "lying", "guilty"}) ||
                    kw == "liar") {
                    if (!negated_before(ts, k)) emit(SocialAct::accuse(speaker, *ts[i].player));
                    break;
                }
                if (any_of(kw, {"town", "clear", "innocent", "safe", "village"})) {
                    if (!negated_before(ts, k)) emit(SocialAct::defend(speaker, *ts[i].player));
                    break;
                }
                if (!any_of(kw, {"the", "a", "an", "really", "definitely", "probably", "so"})) break;
            }
        }

        // "I accuse X", "vote (for) X", "I trust X", "defending X"
        if (any_of(w, {"accuse", "accusing", "accused"}) && !negated_before(ts, i)) {
            if (auto target = ref_within(ts, i + 1, 2)) emit(SocialAct::accuse(speaker, *target));
        }
        if (any_of(w, {"vote", "voting", "voted", "lynch"}) && !negated_before(ts, i)) {
            if (auto target = ref_within(ts, i + 1, 3)) emit(SocialAct::accuse(speaker, *target));
        }
        if (any_of(w, {"trust", "trusting", "defend", "defending", "defended", "believe"}) &&
            !negated_before(ts, i)) {
            if (auto target = ref_within(ts, i + 1, 2)) emit(SocialAct::defend(speaker, *target));
        }
    }
    return acts;
}

std::vector<sag::SocialAct> stamp_acts(std::vector<sag::SocialAct> acts, int day, int turn) {
    for (auto& a : acts) {
        a.day = day;
        a.turn = turn;
    }
    return acts;
}

} // namespace mafia::mem
