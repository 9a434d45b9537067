#include "mafia/sag/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace mafia::sag {

std::string to_string(EdgeKind k) {
    switch (k) {
    case EdgeKind::Accusation: return "accusation";
    case EdgeKind::Defense: return "defense";
    case EdgeKind::VoteAlignment: return "vote_alignment";
    }
    return "accusation";
}

EdgeKind edge_kind_from_string(const std::string& s) {
    if (s == "accusation") return EdgeKind::Accusation;
    if (s == "defense") return EdgeKind::Defense;
    if (s == "vote_alignment") return EdgeKind::VoteAlignment;
    throw RuleError(RuleError::Code::BadArgument, "unknown edge kind: " + s);
}

void SocialAlignmentGraph::require_node(int id) const {
    if (id < 0 || id >= size()) {
        throw RuleError(RuleError::Code::UnknownPlayer,
                        "graph has no node P" + std::to_string(id));
    }
}

void SocialAlignmentGraph::set_alive(int id, bool alive) {
    require_node(id);
    nodes_[static_cast<std::size_t>(id)].alive = alive;
}

void SocialAlignmentGraph::record_act(const SocialAct& act) {
    require_node(act.src);
    switch (act.kind) {
    case ActKind::Accuse:
        require_node(act.dst);
        if (act.src == act.dst) {
            throw RuleError(RuleError::Code::BadArgument, "self-accusation is not an edge");
        }
        edges_.push_back({act.src, act.dst, EdgeKind::Accusation, kAccusationWeight, act.day, act.turn});
        break;
    case ActKind::Defend:
        require_node(act.dst);
        if (act.src == act.dst) {
            throw RuleError(RuleError::Code::BadArgument, "self-defense is not an edge");
        }
        edges_.push_back({act.src, act.dst, EdgeKind::Defense, kDefenseWeight, act.day, act.turn});
        break;
    case ActKind::VoteAlign:
        require_node(act.dst);
        edges_.push_back({act.src, act.dst, EdgeKind::VoteAlignment, kVoteWeight, act.day, act.turn});
        break;
    case ActKind::ClaimRole:
        if (act.role) {
            nodes_[static_cast<std::size_t>(act.src)].claimed_roles.emplace_back(*act.role, act.day);
        }
        break;
    }
}

double SocialAlignmentGraph::net_weight(int src, int dst) const {
    double sum = 0.0;
    for (const auto& e : edges_) {
        if (e.src == src && e.dst == dst) sum += e.weight;
    }
    return sum;
}

double SocialAlignmentGraph::mutual_support_score(int a, int b) const {
    double ab = 0.0, ba = 0.0;
    for (const auto& e : edges_) {
        if (e.weight <= 0.0) continue;
        if (e.src == a && e.dst == b) ab += e.weight;
        if (e.src == b && e.dst == a) ba += e.weight;
    }
    return std::min(ab, ba); // both directions or nothing
}

PressureResult SocialAlignmentGraph::pressure_score(int target) const {
    PressureResult res;
    std::map<int, double> per_src;
    for (const auto& e : edges_) {
        if (e.dst == target && e.weight < 0.0 && e.src != target) {
            per_src[e.src] += -e.weight;
        }
    }
    for (const auto& [src, w] : per_src) {
        (void)src;
        res.score += w;
        res.accusers += 1;
    }
    return res;
}

double SocialAlignmentGraph::defense_in_weight(int target) const {
    double sum = 0.0;
    for (const auto& e : edges_) {
        if (e.dst == target && e.weight > 0.0 && e.src != target) sum += e.weight;
    }
    return sum;
}

std::vector<std::pair<std::pair<int, int>, double>>
SocialAlignmentGraph::collusion_pairs(double threshold) const {
    if (threshold < 0.0) {
        throw RuleError(RuleError::Code::BadArgument, "collusion threshold must be >= 0");
    }
    std::vector<std::pair<std::pair<int, int>, double>> out;
    for (int a = 0; a < size(); ++a) {
        for (int b = a + 1; b < size(); ++b) {
            double s = mutual_support_score(a, b);
            if (s >= threshold && s > 0.0) out.push_back({{a, b}, s});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) return x.second > y.second;
        return x.first < y.first;
    });
    return out;
}

std::vector<SuspicionEntry> SocialAlignmentGraph::suspicion_ranking() const {
    std::vector<SuspicionEntry> out;
    for (int id = 0; id < size(); ++id) {
        if (!nodes_[static_cast<std::size_t>(id)].alive) continue;
        double score = pressure_score(id).score - defense_in_weight(id);
        out.push_back({id, score});
    }
    std::stable_sort(out.begin(), out.end(), [](const SuspicionEntry& a, const SuspicionEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.player < b.player;
    });
    return out;
}

std::string SocialAlignmentGraph::adjacency_dump() const {
    std::vector<SagEdge> sorted = edges_;
    std::stable_sort(sorted.begin(), sorted.end(), [](const SagEdge& a, const SagEdge& b) {
        return std::tie(a.src, a.dst, a.day, a.turn) < std::tie(b.src, b.dst, b.day, b.turn);
    });
    std::ostringstream out;
    for (const auto& e : sorted) {
        out << e.src << " -> " << e.dst << " " << to_string(e.kind) << " " << e.weight << " @d"
            << e.day << ".t" << e.turn << "\n";
    }
    return out.str();
}

nlohmann::json SocialAlignmentGraph::to_json() const {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : nodes_) {
        nlohmann::json claims = nlohmann::json::array();
        for (const auto& [role, day] : n.claimed_roles) {
            claims.push_back({{"role", mafia::to_string(role)}, {"day", day}});
        }
        nodes.push_back({{"alive", n.alive}, {"claims", claims}});
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : edges_) {
        edges.push_back({{"src", e.src},
                         {"dst", e.dst},
                         {"kind", to_string(e.kind)},
                         {"weight", e.weight},
                         {"day", e.day},
                         {"turn", e.turn}});
    }
    return {{"nodes", nodes}, {"edges", edges}};
}

SocialAlignmentGraph SocialAlignmentGraph::from_json(const nlohmann::json& j) {
    SocialAlignmentGraph g(static_cast<int>(j.at("nodes").size()));
    int id = 0;
    for (const auto& n : j.at("nodes")) {
        auto& node = g.nodes_[static_cast<std::size_t>(id++)];
        node.alive = n.at("alive").get<bool>();
        for (const auto& c : n.at("claims")) {
            node.claimed_roles.emplace_back(role_from_string(c.at("role").get<std::string>()),
                                            c.at("day").get<int>());
        }
    }
    for (const auto& e : j.at("edges")) {
        g.edges_.push_back({e.at("src").get<int>(), e.at("dst").get<int>(),
                            edge_kind_from_string(e.at("kind").get<std::string>()),
                            e.at("weight").get<double>(), e.at("day").get<int>(),
                            e.at("turn").get<int>()});
    }
    return g;
}

bool operator==(const SocialAlignmentGraph& a, const SocialAlignmentGraph& b) {
    if (a.size() != b.size() || a.edges_ != b.edges_) return false;
    for (int i = 0; i < a.size(); ++i) {
        const auto& na = a.nodes_[static_cast<std::size_t>(i)];
        const auto& nb = b.nodes_[static_cast<std::size_t>(i)];
        if (na.alive != nb.alive || na.claimed_roles != nb.claimed_roles) return false;
    }
    return true;
}

} // namespace mafia::sag
