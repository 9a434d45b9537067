#pragma once

#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mafia/core/events.hpp"
#include "mafia/core/observation.hpp"
#include "mafia/sag/graph.hpp"

#include "json.hpp"

namespace mafia::mem {

enum class ContradictionKind { CounterClaim, RoleAbilityMismatch, SelfContradiction, ImpossibleReference };

std::string to_string(ContradictionKind k);

struct ContradictionRecord {
    int subject = -1;
    std::vector<int> others;   // counterpart(s), e.g. the rival claimant
    ContradictionKind kind = ContradictionKind::CounterClaim;
    std::vector<int> evidence; // event seq numbers, non-empty
    int day = 0;

    friend bool operator==(const ContradictionRecord&, const ContradictionRecord&) = default;
};

struct ProfileClaim {
    Role role = Role::Villager;
    int day = 0;
    int seq = 0;                                 // statement event
    bool explicit_claim = true;                  // "I am the doctor" vs described ability
    std::optional<NightActionKind> via_ability;
    std::optional<int> ability_target;
};

struct ProfileVote {
    int target = -1;
    int day = 0;
    int seq = 0;
};

struct PlayerProfile {
    int id = -1;
    std::vector<ProfileClaim> claims;
    std::vector<ProfileVote> votes_cast;
    std::deque<std::string> statement_digest; // bounded, oldest evicted first
    std::pair<int, int> last_updated{-1, -1};  // (day, seq)
};

enum class FactKind { OwnRole, InvestigationCheck, PublicReveal };

struct ConfirmedFact {
    FactKind kind = FactKind::OwnRole;
    int subject = -1;
    Alignment alignment = Alignment::Village;
    std::optional<Role> role; // exact role when known
    int source_seq = -1;
    int day = 0;
};

// Per-agent persistent store: player profiles plus the social graph, fed
// strictly forward by event sequence. One instance per seat per game.
class RevacMemory {
public:
    RevacMemory() = default;
    RevacMemory(int owner, int roster_size, std::optional<Role> own_role,
                int digest_cap = kDefaultDigestCap);

    static constexpr int kDefaultDigestCap = 32;

    int owner() const { return owner_; }
    int roster_size() const { return static_cast<int>(profiles_.size()); }
    int last_seq() const { return last_seq_; }
    const PlayerProfile& profile(int id) const { return profiles_.at(static_cast<std::size_t>(id)); }
    const sag::SocialAlignmentGraph& graph() const { return graph_; }
    const std::vector<ConfirmedFact>& confirmed_facts() const { return facts_; }
    std::optional<Role> own_role() const { return own_role_; }
    const std::map<int, Role>& revealed_roles() const { return revealed_; }
    bool alive(int id) const { return graph_.node(id).alive; }

    // Folds new events into profiles, graph and facts. Events must be
    // strictly ordered after everything already consumed.
    void update(std::span<const Event> new_events);
    void update(const std::vector<Event>& new_events) {
        update(std::span<const Event>(new_events.data(), new_events.size()));
    }

    // Consumes only what the observation holds beyond last_seq().
    void catch_up(const Observation& obs);

    std::vector<ContradictionRecord> detect_contradictions() const;

    nlohmann::json to_json() const;

private:
    void ingest(const Event& e);

    int owner_ = -1;
    std::optional<Role> own_role_;
    int digest_cap_ = kDefaultDigestCap;
    int last_seq_ = -1;
    std::vector<PlayerProfile> profiles_;
    sag::SocialAlignmentGraph graph_;
    std::vector<ConfirmedFact> facts_;
    std::map<int, Role> revealed_;     // public post-mortem reveals
    std::map<int, int> death_day_;     // player -> day of recorded death
};

// Test hook: checks that a record's cited evidence really exhibits the
// contradiction it claims, using only the raw events.
bool validate_contradiction(const ContradictionRecord& rec, const std::vector<Event>& events);

} // namespace mafia::mem
