#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mafia/sag/acts.hpp"

#include "json.hpp"

namespace mafia::sag {

enum class EdgeKind { Accusation, Defense, VoteAlignment };

std::string to_string(EdgeKind k);
EdgeKind edge_kind_from_string(const std::string& s);

// Fixed weights. The sign is the semantics; a ballot counts double an
// accusation.
constexpr double kAccusationWeight = -1.0;
constexpr double kDefenseWeight = +1.0;
constexpr double kVoteWeight = -2.0;

// Mutual-defense score at which a pair is reported as a likely alliance
// (two exchanged defenses).
constexpr double kDefaultCollusionThreshold = 2.0;

struct SagEdge {
    int src = -1;
    int dst = -1;
    EdgeKind kind = EdgeKind::Accusation;
    double weight = 0.0;
    int day = 0;
    int turn = 0;

    friend bool operator==(const SagEdge&, const SagEdge&) = default;
};

struct SagNode {
    bool alive = true;
    std::vector<std::pair<Role, int>> claimed_roles; // (role, day)
};

struct PressureResult {
    double score = 0.0; // total |negative in-weight|
    int accusers = 0;   // distinct sources of that weight
};

struct SuspicionEntry {
    int player = -1;
    double score = 0.0;
};

// Directed weighted multigraph of table interactions. Edges are append-only;
// recency is carried on each edge as (day, turn) rather than decayed away.
class SocialAlignmentGraph {
public:
    SocialAlignmentGraph() = default;
    explicit SocialAlignmentGraph(int num_players) : nodes_(num_players) {}

    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<SagEdge>& edges() const { return edges_; }
    const SagNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }

    void set_alive(int id, bool alive);
    void record_act(const SocialAct& act);

    double net_weight(int src, int dst) const;
    double mutual_support_score(int a, int b) const;
    PressureResult pressure_score(int target) const;
    double defense_in_weight(int target) const;

    // Unordered pairs with mutual support >= threshold, strongest first,
    // ties by (min id, max id).
    std::vector<std::pair<std::pair<int, int>, double>> collusion_pairs(double threshold) const;

    // Living players ordered by (pressure - positive in-weight) descending,
    // ties by id.
    std::vector<SuspicionEntry> suspicion_ranking() const;

    // Adjacency ordered by (src, dst, day, turn) for bit-exact diffing.
    std::string adjacency_dump() const;

    nlohmann::json to_json() const;
    static SocialAlignmentGraph from_json(const nlohmann::json& j);

    friend bool operator==(const SocialAlignmentGraph& a, const SocialAlignmentGraph& b);

private:
    void require_node(int id) const;

    std::vector<SagNode> nodes_;
    std::vector<SagEdge> edges_;
};

} // namespace mafia::sag
