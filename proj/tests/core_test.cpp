#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "mafia/arena/match.hpp"
#include "mafia/core/game.hpp"
#include "mafia/core/transcript.hpp"
#include "mafia/util/rng.hpp"
#include "support/oracles.hpp"

using namespace mafia;

namespace {

std::map<Role, int> role_multiset(const GameState& g) {
    std::map<Role, int> counts;
    for (const auto& p : g.players()) counts[p.role] += 1;
    return counts;
}

GameState fresh(std::uint64_t seed = 42) { return GameState::new_game(default_preset(seed)); }

int find_role(const GameState& g, Role r) {
    for (const auto& p : g.players()) {
        if (p.role == r) return p.id;
    }
    return -1;
}

std::vector<int> mafia_ids(const GameState& g) {
    std::vector<int> out;
    for (const auto& p : g.players()) {
        if (p.role == Role::Mafia) out.push_back(p.id);
    }
    return out;
}

} // namespace

TEST_CASE("new_game assigns the configured role multiset over ids 0..n-1") {
    GameState g = fresh();
    CHECK(g.players().size() == 6);
    auto counts = role_multiset(g);
    CHECK(counts[Role::Villager] == 2);
    CHECK(counts[Role::Doctor] == 1);
    CHECK(counts[Role::Detective] == 1);
    CHECK(counts[Role::Mafia] == 2);
    for (int i = 0; i < 6; ++i) {
        CHECK(g.players()[static_cast<std::size_t>(i)].id == i);
        CHECK(g.alive(i));
    }
    CHECK(g.phase() == Phase::night(0));
    REQUIRE(g.events().size() == 1);
    CHECK(g.events()[0].kind == EventKind::GameStarted);
}

TEST_CASE("same seed gives the same assignment, different seeds eventually differ") {
    GameState a = fresh(7), b = fresh(7);
    for (int i = 0; i < 6; ++i) CHECK(a.role_of(i) == b.role_of(i));

    bool any_diff = false;
    GameState c = fresh(8);
    for (int i = 0; i < 6; ++i) any_diff |= a.role_of(i) != c.role_of(i);
    CHECK(any_diff);
}

TEST_CASE("invalid configs are rejected") {
    GameConfig cfg = default_preset();
    cfg.role_counts[Role::Mafia] = 3;
    cfg.role_counts[Role::Villager] = 1;
    // 3 mafia vs 3 village: parity at start
    CHECK_THROWS_AS(GameState::new_game(cfg), RuleError);

    GameConfig bad_sum = default_preset();
    bad_sum.role_counts[Role::Villager] = 5;
    CHECK_THROWS_AS(GameState::new_game(bad_sum), RuleError);

    GameConfig no_mafia = default_preset();
    no_mafia.role_counts[Role::Mafia] = 0;
    no_mafia.role_counts[Role::Villager] = 4;
    CHECK_THROWS_AS(GameState::new_game(no_mafia), RuleError);
}

TEST_CASE("with_roles requires the exact multiset") {
    GameConfig cfg = default_preset();
    std::vector<Role> roles(6, Role::Villager);
    CHECK_THROWS_AS(GameState::with_roles(cfg, roles), RuleError);
}

TEST_CASE("night action legality") {
    GameState g = fresh();
    int doctor = find_role(g, Role::Doctor);
    int villager = find_role(g, Role::Villager);
    int detective = find_role(g, Role::Detective);
    auto mafia = mafia_ids(g);

    SUBCASE("doctor may protect self") {
        g.submit_night_action(doctor, {NightActionKind::Protect, doctor});
        CHECK(g.night_buffer().doctor_target == doctor);
    }
    SUBCASE("villagers have no night ability") {
        CHECK_THROWS_AS(g.submit_night_action(villager, {NightActionKind::Kill, doctor}),
                        RuleError);
        CHECK_THROWS_AS(g.submit_night_action(villager, {NightActionKind::Investigate, doctor}),
                        RuleError);
    }
    SUBCASE("role/action mismatch for specials") {
        CHECK_THROWS_AS(g.submit_night_action(doctor, {NightActionKind::Kill, villager}),
                        RuleError);
        CHECK_THROWS_AS(g.submit_night_action(detective, {NightActionKind::Protect, villager}),
                        RuleError);
    }
    SUBCASE("dead targets are illegal") {
        g.submit_night_action(mafia[0], {NightActionKind::Kill, villager});
        g.resolve_night();
        REQUIRE(!g.alive(villager));
        CHECK(g.phase().is_day(DayStage::Discussion));
        // fast-forward to the next night
        for (int round = 0; round < g.config().discussion_rounds_per_day; ++round) {
            for (int p : g.living_ids()) g.record_statement(p, "", {});
        }
        g.tally_votes();
        REQUIRE(g.phase().is_night());
        CHECK_THROWS_AS(g.submit_night_action(mafia[0], {NightActionKind::Kill, villager}),
                        RuleError);
        CHECK_THROWS_AS(g.submit_night_action(detective, {NightActionKind::Investigate, villager}),
                        RuleError);
    }
    SUBCASE("wrong phase") {
        g.resolve_night();
        CHECK(g.phase().is_day(DayStage::Discussion));
        CHECK_THROWS_AS(g.submit_night_action(doctor, {NightActionKind::Protect, doctor}),
                        RuleError);
        CHECK_THROWS_AS(g.resolve_night(), RuleError);
    }
    SUBCASE("re-submission overwrites") {
        g.submit_night_action(doctor, {NightActionKind::Protect, doctor});
        g.submit_night_action(doctor, {NightActionKind::Protect, villager});
        CHECK(g.night_buffer().doctor_target == villager);
    }
    SUBCASE("dead actors may not act") {
        g.submit_night_action(mafia[0], {NightActionKind::Kill, detective});
        g.resolve_night();
        for (int round = 0; round < g.config().discussion_rounds_per_day; ++round) {
            for (int p : g.living_ids()) g.record_statement(p, "", {});
        }
        g.tally_votes();
        REQUIRE(g.phase().is_night());
        CHECK_THROWS_AS(g.submit_night_action(detective, {NightActionKind::Investigate, mafia[0]}),
                        RuleError);
    }
}

TEST_CASE("night resolution: protection, investigation, kills") {
    GameState g = fresh();
    int doctor = find_role(g, Role::Doctor);
    int detective = find_role(g, Role::Detective);
    int villager = find_role(g, Role::Villager);
    auto mafia = mafia_ids(g);

    SUBCASE("matched protection blocks the kill") {
        g.submit_night_action(mafia[0], {NightActionKind::Kill, villager});
        g.submit_night_action(doctor, {NightActionKind::Protect, villager});
        g.resolve_night();
        CHECK(g.alive(villager));
        bool saw_no_death = false;
        for (const auto& e : g.events()) {
            if (const auto* nr = e.get<ev::NightResolved>()) {
                CHECK(!nr->death.has_value());
                saw_no_death = true;
            }
        }
        CHECK(saw_no_death);
    }
    SUBCASE("missed protection lets the kill through") {
        g.submit_night_action(mafia[0], {NightActionKind::Kill, villager});
        g.submit_night_action(doctor, {NightActionKind::Protect, doctor});
        g.resolve_night();
        CHECK(!g.alive(villager));
        bool revealed = false;
        for (const auto& e : g.events()) {
            if (const auto* pe = e.get<ev::PlayerEliminated>()) {
                CHECK(pe->player == villager);
                CHECK(pe->revealed_role == Role::Villager);
                CHECK(e.is_public());
                revealed = true;
            }
        }
        CHECK(revealed);
    }
    SUBCASE("no kill submitted means a no-kill night") {
        g.resolve_night();
        CHECK(g.living_count() == 6);
    }
    SUBCASE("detective learns the target's alignment privately") {
        g.submit_night_action(detective, {NightActionKind::Investigate, mafia[0]});
        g.resolve_night();
        bool found = false;
        for (const auto& e : g.events()) {
            if (const auto* ir = e.get<ev::InvestigationResult>()) {
                CHECK(ir->alignment == Alignment::Mafia);
                CHECK(ir->detective == detective);
                CHECK(e.visibility == std::vector<int>{detective});
                found = true;
            }
        }
        CHECK(found);
    }
    SUBCASE("lowest-id living mafia member's kill choice wins") {
        REQUIRE(mafia.size() == 2);
        g.submit_night_action(mafia[1], {NightActionKind::Kill, villager});
        g.submit_night_action(mafia[0], {NightActionKind::Kill, doctor});
        CHECK(g.night_buffer().mafia_target == doctor);
    }
}

TEST_CASE("statements: quota, acts stored verbatim, dead speakers rejected") {
    GameConfig cfg = default_preset(3);
    cfg.discussion_rounds_per_day = 1;
    GameState g = GameState::new_game(cfg);
    g.resolve_night();
    REQUIRE(g.phase().is_day(DayStage::Discussion));

    auto act = sag::SocialAct::claim(0, Role::Detective).at(0, 1);
    g.record_statement(0, "I am the detective.", {act});
    const auto& e = g.events().back();
    const auto* st = e.get<ev::StatementMade>();
    REQUIRE(st != nullptr);
    CHECK(st->text == "I am the detective.");
    REQUIRE(st->acts.size() == 1);
    CHECK(st->acts[0] == act);

    // empty text is a legal pass
    g.record_statement(1, "", {});

    // act source must match the speaker
    CHECK_THROWS_AS(g.record_statement(2, "x", {sag::SocialAct::accuse(3, 1)}), RuleError);

    for (int p = 2; p < 6; ++p) g.record_statement(p, "", {});
    CHECK(g.phase().is_day(DayStage::Voting));
    CHECK_THROWS_AS(g.record_statement(0, "too late", {}), RuleError);
}

TEST_CASE("voting: plurality, overwrite, ties, abstention") {
    GameConfig cfg = default_preset(4);
    cfg.discussion_rounds_per_day = 0; // straight to voting
    GameState g = GameState::new_game(cfg);
    g.resolve_night();
    REQUIRE(g.phase().is_day(DayStage::Voting));

    SUBCASE("strict plurality eliminates") {
        for (int voter : {0, 1, 3, 5}) g.cast_vote(voter, 2);
        g.cast_vote(2, 5);
        g.cast_vote(4, 5);
        auto out = g.tally_votes();
        REQUIRE(out.has_value());
        CHECK(*out == 2);
        CHECK(!g.alive(2));
    }
    SUBCASE("re-vote overwrites, enabling a flip") {
        for (int voter : {0, 1}) g.cast_vote(voter, 2);
        for (int voter : {3, 4, 5}) g.cast_vote(voter, 0);
        g.cast_vote(0, 0); // flips own ballot onto the wagon
        auto out = g.tally_votes();
        REQUIRE(out.has_value());
        CHECK(*out == 0);
    }
    SUBCASE("ties eliminate nobody") {
        g.cast_vote(0, 1);
        g.cast_vote(1, 0);
        auto out = g.tally_votes();
        CHECK(!out.has_value());
        CHECK(g.living_count() == 6);
    }
    SUBCASE("full abstention eliminates nobody") {
        auto out = g.tally_votes();
        CHECK(!out.has_value());
        CHECK(g.phase().is_night());
        CHECK(g.phase().day == 1);
    }
    SUBCASE("unknown targets are rejected") {
        CHECK_THROWS_AS(g.cast_vote(0, 99), RuleError);
    }
}

TEST_CASE("tally is order-independent and matches an exhaustive plurality oracle") {
    // every vote assignment of 4 living voters over 4 targets
    GameConfig cfg;
    cfg.num_players = 4;
    cfg.role_counts = {
        {Role::Villager, 2}, {Role::Doctor, 1}, {Role::Detective, 0}, {Role::Mafia, 1}};
    cfg.discussion_rounds_per_day = 0;
    cfg.seed = 5;

    int assignments = 0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            for (int c = 0; c < 4; ++c) {
                for (int d = 0; d < 4; ++d) {
                    std::map<int, int> votes = {{0, a}, {1, b}, {2, c}, {3, d}};
                    auto expected = oracle::plurality(votes);

                    for (bool reversed : {false, true}) {
                        GameState g = GameState::new_game(cfg);
                        g.resolve_night();
                        REQUIRE(g.phase().is_day(DayStage::Voting));
                        if (reversed) {
                            for (auto it = votes.rbegin(); it != votes.rend(); ++it) {
                                g.cast_vote(it->first, it->second);
                            }
                        } else {
                            for (const auto& [voter, target] : votes) g.cast_vote(voter, target);
                        }
                        auto got = g.tally_votes();
                        CHECK(got == expected);
                    }
                    ++assignments;
                }
            }
        }
    }
    CHECK(assignments == 256);
}

TEST_CASE("check_win: village clear, mafia parity, ongoing game") {
    GameConfig cfg = default_preset(9);
    cfg.discussion_rounds_per_day = 0;
    GameState g = GameState::with_roles(cfg, {Role::Mafia, Role::Mafia, Role::Detective,
                                              Role::Doctor, Role::Villager, Role::Villager});
    CHECK(!g.check_win().has_value());

    SUBCASE("village wins when the last mafia falls") {
        g.resolve_night();
        for (int v : {2, 3, 4, 5}) g.cast_vote(v, 0);
        g.tally_votes();
        CHECK(!g.phase().is_ended());
        g.resolve_night();
        for (int v : {2, 3, 4, 5}) g.cast_vote(v, 1);
        g.tally_votes();
        REQUIRE(g.phase().is_ended());
        CHECK(g.phase().winner == Alignment::Village);
    }
    SUBCASE("mafia parity ends the game at night resolution") {
        g.submit_night_action(0, {NightActionKind::Kill, 4});
        g.resolve_night(); // 2v3
        CHECK(!g.phase().is_ended());
        g.tally_votes();
        g.submit_night_action(0, {NightActionKind::Kill, 5});
        g.resolve_night(); // 2v2
        REQUIRE(g.phase().is_ended());
        CHECK(g.phase().winner == Alignment::Mafia);
    }
}

TEST_CASE("stalemate cap hands the game to the mafia") {
    GameConfig cfg = default_preset(10);
    cfg.max_days = 2;
    cfg.discussion_rounds_per_day = 0;
    GameState g = GameState::new_game(cfg);
    g.resolve_night();
    g.tally_votes(); // -> night 1
    CHECK(g.phase() == Phase::night(1));
    g.resolve_night();
    g.tally_votes(); // day cap reached
    REQUIRE(g.phase().is_ended());
    CHECK(g.phase().winner == Alignment::Mafia);
}

TEST_CASE("observations hide exactly the right things") {
    GameState g = fresh(11);
    int detective = find_role(g, Role::Detective);
    int villager = find_role(g, Role::Villager);
    auto mafia = mafia_ids(g);

    g.submit_night_action(detective, {NightActionKind::Investigate, mafia[0]});
    g.resolve_night();

    Observation village_view = g.observation_for(villager);
    CHECK(village_view.viewer_role == Role::Villager);
    CHECK(village_view.private_events.empty());
    CHECK(village_view.mafia_partners.empty());

    Observation det_view = g.observation_for(detective);
    REQUIRE(det_view.private_events.size() == 2); // own submission + result
    CHECK(det_view.private_events[1].get<ev::InvestigationResult>() != nullptr);

    Observation mafia_view = g.observation_for(mafia[0]);
    REQUIRE(mafia_view.mafia_partners.size() == 1);
    CHECK(mafia_view.mafia_partners[0] == mafia[1]);

    CHECK_THROWS_AS(g.observation_for(99), RuleError);
}

TEST_CASE("information hiding holds across random playouts") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        arena::MatchConfig mc;
        mc.game = default_preset();
        mc.game.discussion_rounds_per_day = 1;
        mc.seed = seed;
        mc.seats.assign(6, "random");
        Transcript t = arena::run_match(mc);

        GameState g = GameState::with_roles(t.config, t.roles);
        for (int viewer = 0; viewer < 6; ++viewer) {
            Observation obs = g.observation_for(viewer);
            for (const auto& e : obs.private_events) CHECK(e.visible_to(viewer));
            for (const auto& e : obs.public_events) CHECK(e.is_public());
            bool is_mafia = t.roles[static_cast<std::size_t>(viewer)] == Role::Mafia;
            CHECK(obs.mafia_partners.empty() == !is_mafia);
        }
    }
}

TEST_CASE("random playouts: termination, conservation, mortality, win soundness") {
    const auto base_counts = role_multiset(fresh(0));
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        arena::MatchConfig mc;
        mc.game = default_preset();
        mc.game.discussion_rounds_per_day = 1;
        mc.seed = seed;
        mc.seats.assign(6, "random");
        Transcript t = arena::run_match(mc);
        REQUIRE(t.winner.has_value());

        GameState g = GameState::with_roles(t.config, t.roles);
        std::set<int> dead;
        for (const auto& e : t.events) {
            if (const auto* pe = e.get<ev::PlayerEliminated>()) {
                CHECK(dead.insert(pe->player).second); // dies exactly once
            }
            if (const auto* st = e.get<ev::StatementMade>()) CHECK(!dead.count(st->speaker));
            if (const auto* vc = e.get<ev::VoteCast>()) {
                CHECK(!dead.count(vc->voter));
                CHECK(!dead.count(vc->target));
            }
            if (const auto* ns = e.get<ev::NightActionSubmitted>()) CHECK(!dead.count(ns->actor));
            CHECK(e.day <= mc.game.max_days);
        }
        CHECK(role_multiset(g) == base_counts);
        CHECK(g.check_win() == oracle::win_recount(g));
    }
}

TEST_CASE("event log json round-trips exactly") {
    arena::MatchConfig mc;
    mc.game = default_preset();
    mc.seed = 77;
    mc.seats.assign(6, "random");
    Transcript t = arena::run_match(mc);
    for (const auto& e : t.events) {
        nlohmann::json j;
        to_json(j, e);
        Event back;
        from_json(j, back);
        CHECK(same_event(e, back));
    }
}

TEST_CASE("transcript round-trip and replay verification") {
    arena::MatchConfig mc;
    mc.game = default_preset();
    mc.seed = 123;
    mc.seats.assign(6, "random");
    Transcript t = arena::run_match(mc);

    SUBCASE("serialisation is the identity") {
        Transcript back = Transcript::from_jsonl(t.to_jsonl());
        CHECK(back.to_jsonl() == t.to_jsonl());
    }
    SUBCASE("unmodified transcripts replay clean") {
        ReplayReport report = replay_transcript(t);
        CHECK(report.ok);
        CHECK(report.replayed_winner == t.winner);
    }
    SUBCASE("a tampered vote is pinpointed") {
        Transcript bad = t;
        bool tampered = false;
        for (auto& e : bad.events) {
            if (auto* vc = std::get_if<ev::VoteCast>(&e.payload)) {
                vc->target = vc->voter; // redirect one ballot
                tampered = true;
                break;
            }
        }
        REQUIRE(tampered);
        ReplayReport report = replay_transcript(bad);
        CHECK(!report.ok);
        CHECK(!report.divergences.empty());
    }
}
