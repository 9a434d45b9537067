#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mafia/core/game.hpp"
#include "mafia/memory/extract.hpp"
#include "mafia/memory/memory.hpp"
#include "mafia/util/rng.hpp"

using namespace mafia;
using mem::RevacMemory;
using sag::ActKind;
using sag::SocialAct;

namespace {

bool has_act(const std::vector<SocialAct>& acts, ActKind kind, int src, int dst) {
    for (const auto& a : acts) {
        if (a.kind == kind && a.src == src && a.dst == dst) return true;
    }
    return false;
}

bool has_claim(const std::vector<SocialAct>& acts, int src, Role role, bool via_ability) {
    for (const auto& a : acts) {
        if (a.kind == ActKind::ClaimRole && a.src == src && a.role == role &&
            a.via_ability.has_value() == via_ability) {
            return true;
        }
    }
    return false;
}

// A short scripted game used by several tests: P0 detective, P3/P4 mafia,
// P5 doctor.
GameState scripted_game() {
    GameConfig cfg = default_preset(31);
    cfg.discussion_rounds_per_day = 1;
    GameState g = GameState::with_roles(
        cfg, {Role::Detective, Role::Villager, Role::Villager, Role::Mafia, Role::Mafia,
              Role::Doctor});
    g.submit_night_action(0, {NightActionKind::Investigate, 3});
    g.submit_night_action(5, {NightActionKind::Protect, 5});
    g.submit_night_action(3, {NightActionKind::Kill, 5});
    g.resolve_night();
    auto say = [&g](int speaker, const std::string& text) {
        auto acts = mem::stamp_acts(mem::extract_acts(text, 6, speaker), g.phase().day,
                                    static_cast<int>(g.events().size()));
        g.record_statement(speaker, text, acts);
    };
    say(0, "I am the detective. I checked P3: P3 is mafia.");
    say(1, "");
    say(2, "I trust P0.");
    say(3, "I am the detective. P0 is lying.");
    say(4, "I am the doctor. I protected P3 last night.");
    say(5, "I am the doctor and I saved myself last night.");
    g.cast_vote(2, 3);
    return g;
}

} // namespace

TEST_CASE("extraction: canonical accusation, defense and claim patterns") {
    SUBCASE("'I accuse Player 2' resolves the long-form reference") {
        auto acts = mem::extract_acts("I accuse Player 2", 6, 1);
        REQUIRE(acts.size() == 1);
        CHECK(has_act(acts, ActKind::Accuse, 1, 2));
    }
    SUBCASE("'I protected P3' implies a doctor claim plus a defense") {
        auto acts = mem::extract_acts("I protected P3", 6, 4);
        CHECK(acts.size() == 2);
        CHECK(has_claim(acts, 4, Role::Doctor, true));
        CHECK(has_act(acts, ActKind::Defend, 4, 3));
    }
    SUBCASE("small talk produces nothing") {
        CHECK(mem::extract_acts("nice weather today", 6, 0).empty());
        CHECK(mem::extract_acts("", 6, 0).empty());
    }
    SUBCASE("explicit role claims") {
        auto acts = mem::extract_acts("I am the detective.", 6, 2);
        REQUIRE(acts.size() == 1);
        CHECK(has_claim(acts, 2, Role::Detective, false));

        acts = mem::extract_acts("I'm a villager, honestly.", 6, 2);
        REQUIRE(acts.size() == 1);
        CHECK(has_claim(acts, 2, Role::Villager, false));
    }
    SUBCASE("'checked X as mafia' yields claim plus accusation") {
        auto acts = mem::extract_acts("I checked P3: P3 is mafia.", 6, 0);
        CHECK(has_claim(acts, 0, Role::Detective, true));
        CHECK(has_act(acts, ActKind::Accuse, 0, 3));
    }
    SUBCASE("'X is sus' and 'vote X' accuse; 'X is town' defends") {
        CHECK(has_act(mem::extract_acts("P4 is sus", 6, 1), ActKind::Accuse, 1, 4));
        CHECK(has_act(mem::extract_acts("vote P4 today", 6, 1), ActKind::Accuse, 1, 4));
        CHECK(has_act(mem::extract_acts("P4 is town", 6, 1), ActKind::Defend, 1, 4));
        CHECK(has_act(mem::extract_acts("I trust P4", 6, 1), ActKind::Defend, 1, 4));
    }
    SUBCASE("negations suppress the act") {
        CHECK(mem::extract_acts("do not trust P4", 6, 1).empty());
        CHECK(mem::extract_acts("P4 is not mafia... maybe", 6, 1).empty());
    }
    SUBCASE("self-save claims the role but emits no self-edge") {
        auto acts = mem::extract_acts("I saved myself last night", 6, 5);
        REQUIRE(acts.size() == 1);
        CHECK(has_claim(acts, 5, Role::Doctor, true));
    }
    SUBCASE("third-person ability talk is not a first-person claim") {
        CHECK(mem::extract_acts("P0 saved me last night", 6, 1).empty());
    }
    SUBCASE("out-of-roster references never resolve") {
        CHECK(mem::extract_acts("I checked P9 and P9 is mafia", 6, 0).empty());
        CHECK(mem::extract_acts("I accuse Player 12", 6, 0).empty());
    }
    SUBCASE("extraction is a pure function of its inputs") {
        const std::string text = "I am the doctor. I protected P3. P1 is sus. Vote P1.";
        auto first = mem::extract_acts(text, 6, 4);
        for (int i = 0; i < 10; ++i) CHECK(mem::extract_acts(text, 6, 4) == first);
    }
}

TEST_CASE("update: profiles, graph and facts from an event stream") {
    GameState g = scripted_game();
    RevacMemory memory(0, 6, Role::Detective);
    memory.catch_up(g.observation_for(0));

    SUBCASE("statement claims land in the speaker profile") {
        const auto& p4 = memory.profile(4);
        REQUIRE(p4.claims.size() == 2); // explicit doctor + ability doctor
        CHECK(p4.claims[0].role == Role::Doctor);
        CHECK(p4.claims[0].explicit_claim);
        CHECK(!p4.claims[1].explicit_claim);
        CHECK(p4.claims[1].ability_target == 3);
    }
    SUBCASE("votes land in the voter profile and the graph") {
        const auto& p2 = memory.profile(2);
        REQUIRE(p2.votes_cast.size() == 1);
        CHECK(p2.votes_cast[0].target == 3);
        bool vote_edge = false;
        for (const auto& e : memory.graph().edges()) {
            if (e.kind == sag::EdgeKind::VoteAlignment && e.src == 2 && e.dst == 3) {
                vote_edge = true;
            }
        }
        CHECK(vote_edge);
    }
    SUBCASE("own investigation becomes a confirmed fact") {
        bool fact = false;
        for (const auto& f : memory.confirmed_facts()) {
            if (f.kind == mem::FactKind::InvestigationCheck && f.subject == 3 &&
                f.alignment == Alignment::Mafia) {
                fact = true;
            }
        }
        CHECK(fact);
    }
    SUBCASE("someone else's investigation never becomes a fact") {
        RevacMemory other(1, 6, Role::Villager);
        other.update(g.events()); // full stream, including private events
        for (const auto& f : other.confirmed_facts()) {
            CHECK(f.kind != mem::FactKind::InvestigationCheck);
        }
    }
    SUBCASE("third-party claims are not facts") {
        // P4 claimed doctor loudly; no fact should exist about P4
        for (const auto& f : memory.confirmed_facts()) CHECK(f.subject != 4);
    }
    SUBCASE("empty update is the identity") {
        auto before = memory.to_json();
        memory.update(std::vector<Event>{});
        CHECK(memory.to_json() == before);
    }
    SUBCASE("out-of-order events are rejected") {
        CHECK_THROWS_AS(memory.update(g.events()), RuleError);
    }
}

TEST_CASE("replay equivalence: chunked updates equal one full pass") {
    GameState g = scripted_game();
    auto events = g.observation_for(0).all_events();

    RevacMemory whole(0, 6, Role::Detective);
    whole.update(events);

    Rng rng(17);
    for (int iter = 0; iter < 20; ++iter) {
        RevacMemory chunked(0, 6, Role::Detective);
        std::size_t i = 0;
        while (i < events.size()) {
            std::size_t len = 1 + rng.bounded(events.size() - i);
            std::vector<Event> chunk(events.begin() + static_cast<long>(i),
                                     events.begin() + static_cast<long>(i + len));
            chunked.update(chunk);
            i += len;
        }
        CHECK(chunked.to_json() == whole.to_json());
    }
}

TEST_CASE("statement digests stay bounded") {
    RevacMemory memory(0, 6, Role::Villager, 8);
    GameConfig cfg = default_preset(77);
    cfg.discussion_rounds_per_day = 12;
    GameState g = GameState::new_game(cfg);
    g.resolve_night();
    for (int round = 0; round < 12; ++round) {
        for (int p : g.living_ids()) {
            g.record_statement(p, "turn " + std::to_string(round), {});
        }
    }
    memory.catch_up(g.observation_for(0));
    for (int p = 0; p < 6; ++p) {
        CHECK(memory.profile(p).statement_digest.size() <= 8);
    }
    // newest entries survive eviction
    CHECK(memory.profile(0).statement_digest.back().find("turn 11") != std::string::npos);
}

TEST_CASE("contradictions: counter-claims on unique roles") {
    GameState g = scripted_game();
    RevacMemory memory(1, 6, Role::Villager);
    memory.catch_up(g.observation_for(1));

    auto recs = memory.detect_contradictions();
    bool det_counter = false, doc_counter = false;
    for (const auto& r : recs) {
        if (r.kind != mem::ContradictionKind::CounterClaim) continue;
        std::set<int> involved{r.subject};
        involved.insert(r.others.begin(), r.others.end());
        if (involved == std::set<int>{0, 3}) det_counter = true;
        if (involved == std::set<int>{4, 5}) doc_counter = true;
        CHECK(!r.evidence.empty());
    }
    CHECK(det_counter);
    CHECK(doc_counter);

    SUBCASE("every record validates against the raw events") {
        auto events = g.observation_for(1).all_events();
        for (const auto& r : recs) CHECK(mem::validate_contradiction(r, events));
    }
    SUBCASE("no records without claims") {
        RevacMemory empty(1, 6, Role::Villager);
        CHECK(empty.detect_contradictions().empty());
    }
}

TEST_CASE("contradictions: ability mismatch and impossible reference") {
    GameConfig cfg = default_preset(32);
    cfg.discussion_rounds_per_day = 1;
    GameState g = GameState::with_roles(cfg, {Role::Villager, Role::Villager, Role::Mafia,
                                              Role::Mafia, Role::Detective, Role::Doctor});
    // night 0: P0 dies
    g.submit_night_action(2, {NightActionKind::Kill, 0});
    g.resolve_night();
    auto say = [&g](int speaker, const std::string& text) {
        auto acts = mem::stamp_acts(mem::extract_acts(text, 6, speaker), g.phase().day,
                                    static_cast<int>(g.events().size()));
        g.record_statement(speaker, text, acts);
    };
    // day 0 filler
    for (int p : g.living_ids()) say(p, "");
    g.tally_votes();
    g.resolve_night(); // quiet night 1
    say(1, "I am a villager. I was investigating P0 last night.");

    RevacMemory memory(4, 6, Role::Detective);
    memory.catch_up(g.observation_for(4));
    auto recs = memory.detect_contradictions();

    bool mismatch = false, impossible = false;
    for (const auto& r : recs) {
        if (r.subject != 1) continue;
        if (r.kind == mem::ContradictionKind::RoleAbilityMismatch) mismatch = true;
        if (r.kind == mem::ContradictionKind::ImpossibleReference) {
            impossible = true;
            REQUIRE(!r.others.empty());
            CHECK(r.others.front() == 0);
        }
    }
    CHECK(mismatch);
    CHECK(impossible);

    auto events = g.observation_for(4).all_events();
    for (const auto& r : recs) CHECK(mem::validate_contradiction(r, events));
}

TEST_CASE("contradictions: self-contradiction needs two explicit claims") {
    GameConfig cfg = default_preset(33);
    cfg.discussion_rounds_per_day = 2;
    GameState g = GameState::new_game(cfg);
    g.resolve_night();
    auto say = [&g](int speaker, const std::string& text) {
        auto acts = mem::stamp_acts(mem::extract_acts(text, 6, speaker), g.phase().day,
                                    static_cast<int>(g.events().size()));
        g.record_statement(speaker, text, acts);
    };
    say(0, "I am a villager.");
    for (int p = 1; p < 6; ++p) say(p, "");
    say(0, "Actually, I am the doctor.");
    for (int p = 1; p < 6; ++p) say(p, "");

    RevacMemory memory(1, 6, Role::Villager);
    memory.catch_up(g.observation_for(1));
    bool self = false;
    for (const auto& r : memory.detect_contradictions()) {
        if (r.kind == mem::ContradictionKind::SelfContradiction && r.subject == 0) self = true;
    }
    CHECK(self);
}

TEST_CASE("duplicate detection runs yield identical results") {
    GameState g = scripted_game();
    RevacMemory memory(1, 6, Role::Villager);
    memory.catch_up(g.observation_for(1));
    auto a = memory.detect_contradictions();
    auto b = memory.detect_contradictions();
    CHECK(a == b);
}
