#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>

#include "mafia/bench/fixtures.hpp"
#include "mafia/bench/suite.hpp"
#include "mafia/util/rng.hpp"

using namespace mafia;
using bench::BenchmarkCase;

#ifndef MAFIA_DATA_DIR
#define MAFIA_DATA_DIR "data"
#endif

namespace {

const std::vector<BenchmarkCase>& cases() {
    static const std::vector<BenchmarkCase> all = bench::builtin_cases();
    return all;
}

const BenchmarkCase& case_by_id(const std::string& id) {
    for (const auto& c : cases()) {
        if (c.id == id) return c;
    }
    REQUIRE(false);
    return cases().front();
}

} // namespace

TEST_CASE("the bundled suite holds 13 validated cases covering all four tags") {
    CHECK(cases().size() == 13);
    std::set<std::string> seen_tags, seen_ids;
    for (const auto& c : cases()) {
        CHECK(seen_ids.insert(c.id).second);
        CHECK_NOTHROW(bench::validate_case(c));
        for (const auto& t : c.tags) seen_tags.insert(t);
        CHECK(static_cast<int>(c.ground_truth.size()) == c.config.num_players);
    }
    CHECK(seen_tags == std::set<std::string>{"conflicting-claims", "hallucination",
                                             "no-kill-night", "strategic-deception"});
    // ordered by id
    for (std::size_t i = 1; i < cases().size(); ++i) CHECK(cases()[i - 1].id < cases()[i].id);
}

TEST_CASE("the shipped case files load and equal the builtin suite") {
    auto loaded = bench::load_cases(std::string(MAFIA_DATA_DIR) + "/cases");
    REQUIRE(loaded.size() == cases().size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded[i].to_json() == cases()[i].to_json());
    }
}

TEST_CASE("case files round-trip through json") {
    for (const auto& c : cases()) {
        auto back = BenchmarkCase::from_json(c.to_json());
        CHECK(back.to_json() == c.to_json());
    }
}

TEST_CASE("load errors name the offending case and field") {
    namespace fs = std::filesystem;
    fs::remove_all("/tmp/mafia_bad_cases");
    fs::create_directories("/tmp/mafia_bad_cases");

    SUBCASE("missing ground truth entry") {
        auto j = cases().front().to_json();
        j["ground_truth"].erase("3");
        std::ofstream("/tmp/mafia_bad_cases/broken.json") << j.dump();
        try {
            bench::load_cases("/tmp/mafia_bad_cases");
            FAIL("expected CaseLoadError");
        } catch (const bench::CaseLoadError& e) {
            CHECK(e.case_ref == cases().front().id);
            CHECK(e.field == "ground_truth");
        }
    }
    SUBCASE("unknown tag") {
        auto j = cases().front().to_json();
        j["tags"].push_back("totally-new-tag");
        std::ofstream("/tmp/mafia_bad_cases/broken.json") << j.dump();
        CHECK_THROWS_AS(bench::load_cases("/tmp/mafia_bad_cases"), bench::CaseLoadError);
    }
    SUBCASE("events that do not replay") {
        auto j = cases().front().to_json();
        j["events"][2]["payload"]["target"] = 0; // tamper with a night action
        std::ofstream("/tmp/mafia_bad_cases/broken.json") << j.dump();
        CHECK_THROWS_AS(bench::load_cases("/tmp/mafia_bad_cases"), bench::CaseLoadError);
    }
    SUBCASE("missing path") {
        CHECK_THROWS_AS(bench::load_cases("/tmp/does-not-exist-anywhere"),
                        bench::CaseLoadError);
    }
}

TEST_CASE("metric A counts exact role matches over the whole roster") {
    std::map<int, Role> truth = {{0, Role::Detective}, {1, Role::Villager}, {2, Role::Villager},
                                 {3, Role::Mafia},     {4, Role::Mafia},    {5, Role::Doctor}};
    SUBCASE("perfect and half-right predictions") {
        CHECK(bench::metric_a(truth, truth) == 1.0);
        std::map<int, Role> half = truth;
        half[3] = Role::Villager;
        half[4] = Role::Villager;
        half[5] = Role::Villager;
        CHECK(bench::metric_a(half, truth) == 0.5);
    }
    SUBCASE("missing entries count as wrong") {
        std::map<int, Role> partial = {{0, Role::Detective}};
        CHECK(bench::metric_a(partial, truth) == doctest::Approx(1.0 / 6.0));
        CHECK(bench::metric_a({}, truth) == 0.0);
    }
    SUBCASE("random predictions match an independent per-player recount") {
        Rng rng(404);
        for (int iter = 0; iter < 200; ++iter) {
            std::map<int, Role> pred;
            for (int p = 0; p < 6; ++p) pred[p] = kAllRoles[rng.bounded(4)];
            int correct = 0;
            for (int p = 0; p < 6; ++p) {
                if (pred[p] == truth[p]) ++correct;
            }
            CHECK(bench::metric_a(pred, truth) == static_cast<double>(correct) / 6.0);
        }
    }
}

TEST_CASE("stub judge rubric arithmetic") {
    const auto& c = case_by_id("conflicting-claims-1");

    SUBCASE("all four criteria met scores 5.0") {
        std::string good =
            "We cite [E5] and [E7]. The counter-claim between P0 and P3 decides it, and P4 "
            "covered P3. Conclusion: P3 and P4 are the mafia.";
        CHECK(bench::stub_judge(good, c) == 5.0);
    }
    SUBCASE("a hallucinated player forfeits the grounding point") {
        std::string halluc =
            "We cite [E5] and [E7]. The counter-claim between P0 and P3 decides it, and P9 "
            "agrees. Conclusion: P3 and P4 are the mafia.";
        CHECK(bench::stub_judge(halluc, c) <= 3.75);
    }
    SUBCASE("a hallucinated event reference forfeits citations and grounding") {
        std::string bad_ref =
            "We cite [E5] and [E9999]. The counter-claim between P0 and P3 decides it. "
            "Conclusion: P3 and P4 are the mafia.";
        CHECK(bench::stub_judge(bad_ref, c) <= 2.5);
    }
    SUBCASE("empty explanations score zero") { CHECK(bench::stub_judge("", c) == 0.0); }
    SUBCASE("a conclusion naming an undiscussed player is inconsistent") {
        std::string inconsistent =
            "We cite [E5] and [E7]. The counter-claim between P0 and P3 decides it. "
            "Conclusion: P5 did it.";
        CHECK(bench::stub_judge(inconsistent, c) == 3.75);
    }
    SUBCASE("claiming a contradiction in a case without one fails that criterion") {
        const auto& quiet = case_by_id("no-kill-night-1");
        REQUIRE(bench::case_contradictions(quiet).empty());
        std::string invented =
            "We cite [E1] and [E2]. P4 and P5 look coordinated, and there is a counter-claim "
            "between P4 and P5. Conclusion: P4 and P5 are the mafia.";
        CHECK(bench::stub_judge(invented, quiet) == 3.75);
        std::string honest =
            "We cite [E1] and [E2] and see no contradiction at all from P4 or P5. "
            "Conclusion: P4 and P5 are the mafia.";
        CHECK(bench::stub_judge(honest, quiet) == 5.0);
    }
    SUBCASE("scores stay in range under fuzzing") {
        Rng rng(11);
        const std::string pieces[] = {"P0 ", "P9 ", "[E1]", "[E999]", "conclusion ", "mafia ",
                                      "counter-claim ", "no contradiction ", "wibble "};
        for (int iter = 0; iter < 300; ++iter) {
            std::string text;
            for (int k = 0; k < static_cast<int>(rng.bounded(12)); ++k) {
                text += pieces[rng.bounded(std::size(pieces))];
            }
            double s = bench::stub_judge(text, c);
            CHECK(s >= 0.0);
            CHECK(s <= 5.0);
        }
    }
}

TEST_CASE("model judge parses scores and falls back to the stub") {
    const auto& c = case_by_id("no-kill-night-1");
    Rng rng(3);
    SUBCASE("a numeric reply is used directly") {
        agent::ScriptedBackend backend{std::vector<std::string>{"SCORE: 4.5"}};
        auto out = bench::judge("whatever", c, &backend, rng);
        CHECK(out.raw == 4.5);
        CHECK(!out.used_stub);
    }
    SUBCASE("out-of-range replies are clamped") {
        agent::ScriptedBackend backend{std::vector<std::string>{"SCORE: 11"}};
        CHECK(bench::judge("whatever", c, &backend, rng).raw == 5.0);
    }
    SUBCASE("a dead judge backend falls back to the stub") {
        agent::ScriptedBackend backend{
            [](const agent::BackendRequest&) -> std::string { throw agent::BackendError("x"); }};
        auto out = bench::judge("", c, &backend, rng);
        CHECK(out.used_stub);
        CHECK(out.raw == 0.0);
    }
}

TEST_CASE("final score implements the even split exactly") {
    SUBCASE("published pairs land within rounding tolerance") {
        auto s = bench::final_score(0.74, 0.52 * 5.0);
        CHECK(std::abs(s.final_score - 0.63) <= 0.005 + 1e-9);
        s = bench::final_score(0.89, 0.70 * 5.0);
        CHECK(std::abs(s.final_score - 0.80) <= 0.005 + 1e-9);
    }
    SUBCASE("perfect input gives exactly 1.0") {
        auto s = bench::final_score(1.0, 5.0);
        CHECK(s.final_score == 1.0);
        CHECK(s.metric_b_norm == 1.0);
    }
    SUBCASE("out-of-range inputs are rejected") {
        CHECK_THROWS_AS(bench::final_score(-0.1, 3.0), RuleError);
        CHECK_THROWS_AS(bench::final_score(0.5, 5.5), RuleError);
    }
    SUBCASE("identity and monotonicity under fuzzing") {
        Rng rng(12);
        double prev_final = -1.0;
        for (int iter = 0; iter < 500; ++iter) {
            double a = rng.unit();
            double b = rng.unit() * 5.0;
            auto s = bench::final_score(a, b);
            CHECK(s.final_score == 0.5 * s.metric_a + 0.5 * s.metric_b_norm);
            CHECK(s.metric_b_norm == b / 5.0);
            CHECK(s.final_score >= 0.0);
            CHECK(s.final_score <= 1.0);
            // raising B with A fixed never lowers the final score
            auto slow = bench::final_score(a, b * 0.5);
            CHECK(slow.final_score <= s.final_score);
            (void)prev_final;
        }
    }
}

TEST_CASE("run_suite: oracle ceiling, constant floor, failure isolation") {
    Rng rng(9);
    SUBCASE("the oracle scores exactly 1.0 on every axis") {
        bench::OracleCaseAgent oracle;
        auto suite = bench::run_suite(oracle, cases(), nullptr, rng);
        CHECK(suite.mean_a == 1.0);
        CHECK(suite.mean_final == 1.0);
        for (const auto& r : suite.results) {
            CHECK(r.metric_a == 1.0);
            CHECK(r.metric_b_raw == 5.0);
            CHECK(r.final_score == 1.0);
        }
    }
    SUBCASE("the constant-villager baseline lands exactly on the villager fraction") {
        bench::ConstantVillagerCaseAgent constant;
        auto suite = bench::run_suite(constant, cases(), nullptr, rng);
        double expected = 0.0;
        for (const auto& c : cases()) {
            int villagers = 0;
            for (const auto& [p, role] : c.ground_truth) {
                if (role == Role::Villager) ++villagers;
            }
            expected += static_cast<double>(villagers) / c.config.num_players;
        }
        expected /= static_cast<double>(cases().size());
        CHECK(suite.mean_a == expected);
    }
    SUBCASE("one failing case zeroes out without derailing the suite") {
        struct Throwing : bench::CaseAgent {
            bench::CaseResponse respond(const BenchmarkCase& c) override {
                if (c.id == "hallucination-1") throw std::runtime_error("agent exploded");
                bench::OracleCaseAgent oracle;
                return oracle.respond(c);
            }
            std::string name() const override { return "throwing"; }
        } agent;
        auto suite = bench::run_suite(agent, cases(), nullptr, rng);
        int failed = 0;
        for (const auto& r : suite.results) {
            if (r.case_id == "hallucination-1") {
                CHECK(r.agent_failed);
                CHECK(r.final_score == 0.0);
                ++failed;
            } else {
                CHECK(r.final_score == 1.0);
            }
        }
        CHECK(failed == 1);
    }
}

TEST_CASE("pipeline variants run the suite; memory beats amnesia") {
    Rng rng(10);
    bench::PipelineCaseAgent revac(agent::AgentVariant::Revac, nullptr, 1);
    bench::PipelineCaseAgent revac8(agent::AgentVariant::Revac8, nullptr, 1);
    auto base = bench::run_suite(revac, cases(), nullptr, rng);
    auto full = bench::run_suite(revac8, cases(), nullptr, rng);
    CHECK(full.mean_a >= base.mean_a);
    CHECK(full.mean_a > 0.5); // sanity: the full pipeline is meaningfully right
}

TEST_CASE("scenario fidelity: the dual-claim reconstruction") {
    const auto& c = case_by_id("conflicting-claims-1");
    auto contradictions = bench::case_contradictions(c);

    bool det_counter = false, doc_counter = false;
    for (const auto& r : contradictions) {
        if (r.kind != mem::ContradictionKind::CounterClaim) continue;
        std::set<int> involved{r.subject};
        involved.insert(r.others.begin(), r.others.end());
        if (involved == std::set<int>{0, 3}) det_counter = true;
        if (involved == std::set<int>{4, 5}) doc_counter = true;
    }
    CHECK(det_counter);
    CHECK(doc_counter);

    Observation obs = bench::case_observation(c);
    mem::RevacMemory m(c.evaluated_seat, 6, obs.viewer_role);
    m.catch_up(obs);
    auto ranking = m.graph().suspicion_ranking();
    REQUIRE(ranking.size() >= 2);
    bool partner_on_top = ranking[0].player == 3 || ranking[0].player == 4 ||
                          ranking[1].player == 3 || ranking[1].player == 4;
    CHECK(partner_on_top);
}

TEST_CASE("scenario fidelity: the hallucinated investigation reconstruction") {
    const auto& c = case_by_id("hallucination-1");
    auto contradictions = bench::case_contradictions(c);
    bool mismatch = false, impossible = false;
    for (const auto& r : contradictions) {
        if (r.subject != 1) continue;
        if (r.kind == mem::ContradictionKind::RoleAbilityMismatch) mismatch = true;
        if (r.kind == mem::ContradictionKind::ImpossibleReference && !r.others.empty() &&
            r.others.front() == 0) {
            impossible = true;
        }
    }
    CHECK(mismatch);
    CHECK(impossible);
}

TEST_CASE("results persist as one record per case plus an aggregate") {
    Rng rng(14);
    bench::OracleCaseAgent oracle;
    auto suite = bench::run_suite(oracle, cases(), nullptr, rng);
    bench::write_results(suite, "/tmp/mafia_results.jsonl");

    std::ifstream in("/tmp/mafia_results.jsonl");
    REQUIRE(in.good());
    std::string line;
    int records = 0;
    bool aggregate = false;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        if (j.contains("aggregate")) {
            aggregate = true;
            CHECK(j.at("mean_final").get<double>() == 1.0);
        } else {
            ++records;
        }
    }
    CHECK(records == 13);
    CHECK(aggregate);
}

TEST_CASE("case observations expose only the evaluated seat's view") {
    for (const auto& c : cases()) {
        Observation obs = bench::case_observation(c);
        CHECK(obs.viewer == c.evaluated_seat);
        CHECK(obs.viewer_role == c.ground_truth.at(c.evaluated_seat));
        for (const auto& e : obs.private_events) CHECK(e.visible_to(c.evaluated_seat));
        // the evaluated seat must still be in the game
        CHECK(obs.living.count(c.evaluated_seat));
    }
}
