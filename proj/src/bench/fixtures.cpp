#include "mafia/bench/fixtures.hpp"

#include <algorithm>

#include "mafia/memory/extract.hpp"

namespace mafia::bench {

namespace {

constexpr Role V = Role::Villager;
constexpr Role Doc = Role::Doctor;
constexpr Role Det = Role::Detective;
constexpr Role M = Role::Mafia;

class CaseBuilder {
public:
    CaseBuilder(std::string id, std::vector<Role> roles, std::uint64_t seed, int rounds = 1) {
        case_.id = std::move(id);
        GameConfig cfg = default_preset(seed);
        cfg.discussion_rounds_per_day = rounds;
        game_ = GameState::with_roles(cfg, roles);
        case_.config = cfg;
        for (int p = 0; p < cfg.num_players; ++p) {
            case_.ground_truth[p] = roles[static_cast<std::size_t>(p)];
        }
    }

    CaseBuilder& kill(int actor, int target) {
        game_->submit_night_action(actor, {NightActionKind::Kill, target});
        return *this;
    }
    CaseBuilder& protect(int actor, int target) {
        game_->submit_night_action(actor, {NightActionKind::Protect, target});
        return *this;
    }
    CaseBuilder& investigate(int actor, int target) {
        game_->submit_night_action(actor, {NightActionKind::Investigate, target});
        return *this;
    }
    CaseBuilder& resolve() {
        game_->resolve_night();
        return *this;
    }
    CaseBuilder& say(int speaker, const std::string& text) {
        auto acts = mem::stamp_acts(mem::extract_acts(text, game_->config().num_players, speaker),
                                    game_->phase().day, static_cast<int>(game_->events().size()));
        game_->record_statement(speaker, text, acts);
        return *this;
    }
    CaseBuilder& vote(int voter, int target) {
        game_->cast_vote(voter, target);
        return *this;
    }
    CaseBuilder& tally() {
        game_->tally_votes();
        return *this;
    }

    BenchmarkCase finish(int eval_seat, std::vector<std::string> tags, std::string explanation) {
        case_.evaluated_seat = eval_seat;
        case_.tags = std::move(tags);
        case_.explanation = std::move(explanation);
        case_.events = game_->events();

        case_.private_facts.push_back(
            "You are P" + std::to_string(eval_seat) + ", the " +
            to_string(game_->role_of(eval_seat)) + ".");
        for (const auto& e : case_.events) {
            if (e.is_public() || !e.visible_to(eval_seat)) continue;
            if (const auto* r = e.get<ev::InvestigationResult>()) {
                case_.private_facts.push_back("Night " + std::to_string(e.day) + " check: P" +
                                              std::to_string(r->target) + " is " +
                                              to_string(r->alignment) + ".");
            } else if (e.get<ev::ProtectionApplied>()) {
                case_.private_facts.push_back("Night " + std::to_string(e.day) +
                                              ": your protection blocked the kill.");
            }
        }
        return case_;
    }

private:
    BenchmarkCase case_;
    std::optional<GameState> game_;
};

BenchmarkCase conflicting_claims_1() {
    // Two detective claims, two doctor claims, a blocked kill, and a mafia
    // partner covering for his teammate.
    CaseBuilder b("conflicting-claims-1", {Det, V, V, M, M, Doc}, 106);
    b.investigate(0, 3).protect(5, 5).kill(3, 5).resolve();
    b.say(0, "I am the detective. I checked P3: P3 is mafia. Vote P3.");
    b.say(3, "No. I am the detective. I checked P0: P0 is mafia. P0 is lying.");
    b.say(4, "I am the doctor. I protected P3 last night. P3 is telling the truth.");
    b.say(5, "That is false. I am the doctor and I saved myself last night. P4 is lying.");
    b.say(1, "Two detectives and two doctors. P3 and P4 back each other. P3 is suspicious.");
    b.say(2, "I trust P0. The story from P3 does not add up. P3 is sus.");
    return b.finish(
        1, {"conflicting-claims", "no-kill-night"},
        "P3 and P4 are the mafia team. P0 is the real detective whose night-zero check caught "
        "P3; P3 counter-claims to muddy it. P4's doctor claim exists only to cover P3, while "
        "P5 is the real doctor whose self-save explains the no-kill night.");
}

BenchmarkCase hallucination_1() {
    // A villager describes running a night investigation on a player who was
    // already dead, the table's quiet seat is mafia, and an early opportunist
    // ballot lands on a harmless target.
    CaseBuilder b("hallucination-1", {V, V, M, M, Det, Doc}, 107);
    b.investigate(4, 1).protect(5, 5).kill(2, 0).resolve();
    b.say(1, "");
    b.say(2, "Let us not rush. No reads yet.");
    b.say(3, "");
    b.say(4, "We should all share information carefully today.");
    b.say(5, "Rest well everyone.");
    b.tally(); // nobody votes on day zero
    b.investigate(4, 2).protect(5, 4).kill(2, 4).resolve();
    b.say(4, "Everyone, structured claims now: role and night actions, in seat order.");
    b.say(1, "I am a villager, just a villager. I was investigating P0 last night and found "
             "nothing.");
    b.say(2, "I am kind of helping the village side, you know. No role worth sharing.");
    b.say(3, "");
    b.say(5, "P1's story makes no sense. P1 is lying. P3 is suspicious too.");
    b.vote(2, 5);
    return b.finish(
        4, {"hallucination", "no-kill-night"},
        "P2 and P3 are the mafia. P1 is a confused villager whose 'investigating P0' line is "
        "impossible twice over: villagers cannot investigate and P0 was already dead. P3 hides "
        "behind silence and P2 steers the vote toward the quiet doctor P5.");
}

BenchmarkCase strategic_deception_1() {
    // Full claim and counter-claim at lynch-or-lose: the real detective checked
    // a mafia member, the doctor's odd protection muddies it, and the second
    // mafia plays host.
    CaseBuilder b("strategic-deception-1", {M, Det, M, V, V, Doc}, 108);
    b.investigate(1, 2).protect(5, 5).kill(0, 4).resolve();
    b.say(0, "Rough night. Let us be careful with claims today.");
    b.say(1, "");
    b.say(2, "");
    b.say(3, "");
    b.say(5, "");
    b.tally();
    b.investigate(1, 0).protect(5, 2).resolve(); // mafia holds the kill
    b.say(1, "I am the detective. I checked P2 on night zero: P2 is mafia. Vote P2 today or we "
             "lose.");
    b.say(5, "I am the doctor. I protected P2 last night. I wanted to test P1's story.");
    b.say(2, "P1 is lying. I am just a villager. P1 is the mafia here, pushing an innocent.");
    b.say(0, "Interesting. The quiet night means the save explains everything. Let us be "
             "systematic: P1 and P2 cannot both be telling the truth.");
    b.say(3, "");
    return b.finish(
        3, {"strategic-deception", "no-kill-night"},
        "P0 and P2 are the mafia. P1 is the real detective and his night-zero check on P2 is "
        "the strongest lead on the table. P5 really is the doctor but protected the accused, "
        "which reads as cover; P0's knowing 'the save explains everything' commentary is "
        "information only a mafia member could assert, since the mafia simply held the kill.");
}

BenchmarkCase conflicting_claims_2() {
    // Dual doctor claims around a blocked kill; the real detective holds a
    // hard check on one mafia member.
    CaseBuilder b("conflicting-claims-2", {Doc, Det, V, M, V, M}, 109);
    b.protect(0, 1).investigate(1, 5).kill(3, 1).resolve();
    b.say(0, "I am the doctor and I protected P1 last night. That is why nobody died.");
    b.say(3, "Lies. I am the doctor. I protected myself. Nobody died because the mafia held "
             "back.");
    b.say(1, "I am the detective. I checked P5: P5 is mafia. The save on me fits. Vote P5.");
    b.say(5, "P1 is not a detective. P1 is mafia. Do not trust P1.");
    b.say(2, "Two doctors cannot both be real. P1 and P0 line up. P5 is suspicious. I accuse "
             "P5.");
    b.say(4, "I agree. P5 is sus. And P3 is sus too.");
    return b.finish(
        1, {"conflicting-claims", "no-kill-night"},
        "P3 and P5 are the mafia. P0 is the real doctor: the night-zero kill aimed at P1 was "
        "blocked, which is why P3's counter doctor claim has no save to point at. P1's check "
        "on P5 is genuine.");
}

BenchmarkCase hallucination_2() {
    // A mafia member invents a check on a player who does not exist, and his
    // partner later describes protecting a long-dead villager.
    CaseBuilder b("hallucination-2", {M, V, Doc, Det, M, V}, 110);
    b.kill(0, 1).protect(2, 2).investigate(3, 0).resolve();
    b.say(3, "I am the detective. I checked P0: P0 is mafia. Vote P0 today.");
    b.say(0, "Nonsense. I checked P9 last night and P9 was clear. I am the real detective.");
    b.say(2, "");
    b.say(4, "I am not sure about P3.");
    b.say(5, "P3's check sounds real. I trust P3. Vote P0.");
    b.vote(3, 0).vote(5, 0).vote(2, 0).vote(4, 0).vote(0, 3).tally();
    b.kill(4, 3).protect(2, 2).resolve();
    b.say(4, "I protected P1 last night, but it failed somehow. I am with the village.");
    b.say(2, "That is impossible. P1 died two nights ago. I am the doctor, I protected myself. "
             "P4 is lying.");
    b.say(5, "P4 is mafia. It is the only consistent story. Vote P4.");
    return b.finish(
        2, {"hallucination", "strategic-deception"},
        "P0 and P4 were the mafia; P0 hallucinated a check on a nonexistent 'P9' and was voted "
        "out. P4's protection story names P1, who died the first night, and collides with the "
        "real doctor P2.");
}

BenchmarkCase no_kill_night_1() {
    // A blocked first kill and a table with no information yet.
    CaseBuilder b("no-kill-night-1", {V, Doc, Det, V, M, M}, 111);
    b.protect(1, 2).kill(4, 2).investigate(2, 3).resolve();
    b.say(0, "Nobody died. Good start.");
    b.say(1, "");
    b.say(2, "");
    b.say(3, "Quiet night. Stay sharp.");
    b.say(4, "The doctor got lucky, or the mafia is playing games.");
    b.say(5, "Let us hear real information tomorrow.");
    return b.finish(0, {"no-kill-night"},
                    "P4 and P5 are the mafia. The doctor happened to guard the detective, so "
                    "the first night produced no death and almost no signal.");
}

BenchmarkCase strategic_deception_2() {
    // Sustained mutual defense between the two mafia across two days.
    CaseBuilder b("strategic-deception-2", {Det, V, V, M, M, Doc}, 112);
    b.investigate(0, 1).protect(5, 5).kill(3, 2).resolve();
    b.say(3, "P4 has been reasonable. I trust P4.");
    b.say(4, "P3 is town as far as I can tell. I trust P3.");
    b.say(0, "I am the detective. I checked P1: P1 is town.");
    b.say(1, "Thanks P0. I am a villager. The mutual praise between P3 and P4 seems early.");
    b.say(5, "Noted. No strong reads from me.");
    b.tally();
    b.investigate(0, 3).protect(5, 0).kill(3, 0).resolve();
    b.say(0, "I am the detective. I checked P3 last night: P3 is mafia. Vote P3.");
    b.say(3, "P0 is lying. I am just a villager. P4 is innocent, we both are.");
    b.say(4, "I vouch for P3. P3 is innocent. P0 is the liar here.");
    b.say(1, "P0 has been straight with us. I trust P0. P3 and P4 defending each other again "
             "is a pattern.");
    b.say(5, "I believe P0. Vote P3.");
    return b.finish(
        1, {"strategic-deception", "no-kill-night", "conflicting-claims"},
        "P3 and P4 are the mafia. Their repeated mutual defense across both days is the "
        "alliance signal; the blocked second kill on P0 confirms the doctor guessed where the "
        "threat was.");
}

BenchmarkCase strategic_deception_3() {
    // A manufactured pile-on against a checked-innocent villager.
    CaseBuilder b("strategic-deception-3", {V, M, V, Doc, M, Det}, 113);
    b.kill(1, 0).protect(3, 3).investigate(5, 2).resolve();
    b.say(1, "P2 is acting strange. P2 is suspicious.");
    b.say(4, "Agreed, P2 is sus. Vote P2.");
    b.say(2, "What? I am a villager. This is baseless.");
    b.say(3, "I do not like the rush, but P2 is sus, I guess.");
    b.say(5, "Hold on. I am the detective and I checked P2 last night. P2 is town. This "
             "pile-on smells organized. Vote P1.");
    return b.finish(
        5, {"strategic-deception"},
        "P1 and P4 are the mafia, building consensus against the innocent P2. The evaluated "
        "detective holds a clean check on P2, so the bandwagon is evidence about who pushed "
        "it.");
}

BenchmarkCase conflicting_claims_3() {
    // Detective against fake detective, a tied ballot, then lynch-or-lose.
    CaseBuilder b("conflicting-claims-3", {M, V, Det, V, Doc, M}, 114);
    b.kill(0, 3).protect(4, 4).investigate(2, 1).resolve();
    b.say(2, "I am the detective. I checked P1: P1 is town. We start from there.");
    b.say(5, "Convenient. I am the detective. I checked P2: P2 is mafia.");
    b.say(0, "Two detectives. One lies. I lean toward trusting P5.");
    b.say(1, "P2 cleared me, which matches. I trust P2. P5 is lying.");
    b.say(4, "");
    b.vote(2, 5).vote(5, 2).vote(0, 2).vote(1, 5).tally(); // 2-2 tie, nobody leaves
    b.kill(0, 1).protect(4, 1).investigate(2, 5).resolve();
    b.say(2, "I am the detective. I checked P5 last night: P5 is mafia. It is P5 and a "
             "partner. Vote P5 or we lose.");
    b.say(5, "I checked P2 again: P2 is mafia. P1, P4, do not be fooled.");
    b.say(0, "This is a coin flip. I vote P2 today.");
    b.say(1, "P2 cleared me on night zero and P5 never explained anything. P5 is lying. Vote "
             "P5.");
    b.say(4, "");
    return b.finish(
        4, {"conflicting-claims", "strategic-deception", "no-kill-night"},
        "P0 and P5 are the mafia. P2 is the real detective with two genuine checks; the tied "
        "day-zero ballot bought the mafia a night, and only the doctor's guard on P1 kept the "
        "game from ending.");
}

BenchmarkCase no_kill_night_2() {
    // The mafia deliberately hold their kill on the first night.
    CaseBuilder b("no-kill-night-2", {M, Det, V, Doc, V, M}, 115);
    b.protect(3, 1).investigate(1, 4).resolve(); // no kill submitted at all
    b.say(0, "No death. The doctor is good, or the mafia is stalling for reads.");
    b.say(1, "");
    b.say(2, "A quiet night zero. Claims will matter tomorrow.");
    b.say(3, "");
    b.say(4, "Someone is playing mind games already.");
    b.say(5, "Stay calm. Information wins games.");
    return b.finish(
        1, {"no-kill-night", "strategic-deception"},
        "P0 and P5 are the mafia and simply skipped the kill: a no-kill night with no "
        "protection behind it. The evaluated detective holds one clean check on P4.");
}

BenchmarkCase hallucination_3() {
    // An invented day-zero grievance, a story change, and a doctor
    // counter-claim.
    CaseBuilder b("hallucination-3", {V, M, M, V, Doc, Det}, 116);
    b.kill(1, 3).protect(4, 5).investigate(5, 1).resolve();
    b.say(1, "I am a villager. Plain and simple.");
    b.say(2, "Me too, just a quiet seat here.");
    b.say(0, "Everyone saw P3 vote against me yesterday, right? That vote was mafia-driven.");
    b.say(5, "I am the detective. I checked P1: P1 is mafia. Vote P1.");
    b.say(4, "P5's check settles it for me. Vote P1.");
    b.vote(5, 1).vote(4, 1).vote(0, 2).vote(1, 5).vote(2, 5).tally(); // 2-2-1, no lynch
    b.kill(1, 5).protect(4, 5).investigate(5, 2).resolve();
    b.say(1, "Fine, here is the truth: I am the doctor. I protected myself last night.");
    b.say(4, "No. I am the doctor, and I protected P5 last night. That is why P5 is still "
             "here.");
    b.say(5, "I am the detective. I checked P2 last night: P2 is mafia. P1 and P2 are the "
             "team. Vote P2, then P1.");
    b.say(2, "This detective is inventing checks. I am innocent as anyone here.");
    b.say(0, "P1 changed stories completely. P1 is lying. Vote P1.");
    return b.finish(
        5, {"hallucination", "conflicting-claims", "no-kill-night"},
        "P1 and P2 are the mafia. P0's day-zero grievance references a ballot that never "
        "happened. P1 first claims villager, then doctor, colliding with the real doctor P4 "
        "whose guard on P5 blocked the second kill.");
}

BenchmarkCase strategic_deception_4() {
    // Seen from inside the mafia: the evaluated seat buses his caught partner.
    CaseBuilder b("strategic-deception-4", {M, M, Det, V, V, Doc}, 117);
    b.kill(0, 4).protect(5, 2).investigate(2, 1).resolve();
    b.say(2, "I am the detective. I checked P1: P1 is mafia. Vote P1.");
    b.say(1, "That is a lie from a panicking mafia. I am a villager. P2 is mafia.");
    b.say(0, "I cannot verify either claim. P2 moved first, which counts for something. Vote "
             "P1, I suppose.");
    b.say(3, "P2's claim felt genuine. I trust P2. Vote P1.");
    b.say(5, "Agreed. Vote P1 today, ask questions after.");
    return b.finish(
        0, {"strategic-deception"},
        "P0 and P1 are the mafia and P0 is the evaluated seat. The detective's check on P1 is "
        "real; P0 quietly joins the wagon on his own partner to buy credibility for the "
        "endgame.");
}

BenchmarkCase no_kill_night_3() {
    // Two blocked kills in a row; the detective is publicly vindicated when
    // his first target flips mafia.
    CaseBuilder b("no-kill-night-3", {Det, M, V, Doc, M, V}, 118);
    b.investigate(0, 1).protect(3, 0).kill(1, 0).resolve();
    b.say(0, "I am the detective. I checked P1: P1 is mafia. Vote P1 today.");
    b.say(1, "Bold opener. I am a villager. P0 is overreaching. P0 is lying.");
    b.say(2, "I believe P0. Vote P1.");
    b.say(3, "");
    b.say(4, "Not convinced. P0 is sus. No real proof either way.");
    b.say(5, "Vote P1 and see. Trust P0 for now.");
    b.vote(0, 1).vote(2, 1).vote(5, 1).vote(1, 0).vote(4, 0).vote(3, 1).tally(); // P1 out
    b.investigate(0, 4).protect(3, 0).kill(4, 0).resolve(); // blocked again
    b.say(0, "Same routine: I checked P4 last night. P4 is mafia. Finish it.");
    b.say(2, "Vote P4.");
    b.say(3, "I am the doctor. I protected P0 both nights. P0 is confirmed real. Vote P4.");
    b.say(4, "You are all being led. Fine. Do what you want.");
    b.say(5, "Vote P4. Easy.");
    return b.finish(
        2, {"no-kill-night", "strategic-deception"},
        "P1 and P4 were the mafia. Both night kills aimed at the detective and both were "
        "blocked by the doctor; P1's lynch publicly proved the first check, making the "
        "second check on P4 close to certain.");
}

} // namespace

std::vector<BenchmarkCase> builtin_cases() {
    std::vector<BenchmarkCase> cases;
    cases.push_back(conflicting_claims_1());
    cases.push_back(conflicting_claims_2());
    cases.push_back(conflicting_claims_3());
    cases.push_back(hallucination_1());
    cases.push_back(hallucination_2());
    cases.push_back(hallucination_3());
    cases.push_back(no_kill_night_1());
    cases.push_back(no_kill_night_2());
    cases.push_back(no_kill_night_3());
    cases.push_back(strategic_deception_1());
    cases.push_back(strategic_deception_2());
    cases.push_back(strategic_deception_3());
    cases.push_back(strategic_deception_4());
    std::sort(cases.begin(), cases.end(),
              [](const BenchmarkCase& a, const BenchmarkCase& b) { return a.id < b.id; });
    return cases;
}

} // namespace mafia::bench
