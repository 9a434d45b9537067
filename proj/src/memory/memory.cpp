#include "mafia/memory/memory.hpp"

#include <algorithm>

namespace mafia::mem {

std::string to_string(ContradictionKind k) {
    switch (k) {
    case ContradictionKind::CounterClaim: return "counter_claim";
    case ContradictionKind::RoleAbilityMismatch: return "role_ability_mismatch";
    case ContradictionKind::SelfContradiction: return "self_contradiction";
    case ContradictionKind::ImpossibleReference: return "impossible_reference";
    }
    return "counter_claim";
}

RevacMemory::RevacMemory(int owner, int roster_size, std::optional<Role> own_role, int digest_cap)
    : owner_(owner), own_role_(own_role), digest_cap_(digest_cap),
      graph_(roster_size) {
    profiles_.resize(static_cast<std::size_t>(roster_size));
    for (int i = 0; i < roster_size; ++i) profiles_[static_cast<std::size_t>(i)].id = i;
    if (own_role_) {
        facts_.push_back({FactKind::OwnRole, owner_, alignment_of(*own_role_), *own_role_, -1, 0});
    }
}

void RevacMemory::update(std::span<const Event> new_events) {
    for (const Event& e : new_events) {
        if (e.seq <= last_seq_) {
            throw RuleError(RuleError::Code::BadSequence,
                            "event seq " + std::to_string(e.seq) + " not after " +
                                std::to_string(last_seq_));
        }
        ingest(e);
        last_seq_ = e.seq;
    }
}

void RevacMemory::catch_up(const Observation& obs) {
    std::vector<Event> fresh;
    for (const Event& e : obs.all_events()) {
        if (e.seq > last_seq_) fresh.push_back(e);
    }
    update(fresh);
}

void RevacMemory::ingest(const Event& e) {
    switch (e.kind) {
    case EventKind::StatementMade: {
        const auto& p = std::get<ev::StatementMade>(e.payload);
        auto& prof = profiles_.at(static_cast<std::size_t>(p.speaker));
        for (const auto& act : p.acts) {
            graph_.record_act(act);
            if (act.kind == sag::ActKind::ClaimRole && act.role) {
                prof.claims.push_back({*act.role, e.day, e.seq, !act.via_ability.has_value(),
                                       act.via_ability, act.ability_target});
            }
        }
        std::string line = "d" + std::to_string(e.day) + "#" + std::to_string(e.seq) + " P" +
                           std::to_string(p.speaker) + ": " + p.text.substr(0, 80);
        prof.statement_digest.push_back(std::move(line));
        while (static_cast<int>(prof.statement_digest.size()) > digest_cap_) {
            prof.statement_digest.pop_front();
        }
        prof.last_updated = {e.day, e.seq};
        break;
    }
    case EventKind::VoteCast: {
        const auto& p = std::get<ev::VoteCast>(e.payload);
        auto& prof = profiles_.at(static_cast<std::size_t>(p.voter));
        prof.votes_cast.push_back({p.target, e.day, e.seq});
        prof.last_updated = {e.day, e.seq};
        graph_.record_act(sag::SocialAct::vote(p.voter, p.target).at(e.day, e.seq));
        break;
    }
    case EventKind::PlayerEliminated: {
        const auto& p = std::get<ev::PlayerEliminated>(e.payload);
        graph_.set_alive(p.player, false);
        revealed_[p.player] = p.revealed_role;
        death_day_[p.player] = e.day;
        facts_.push_back({FactKind::PublicReveal, p.player, alignment_of(p.revealed_role),
                          p.revealed_role, e.seq, e.day});
        break;
    }
    case EventKind::InvestigationResult: {
        const auto& p = std::get<ev::InvestigationResult>(e.payload);
        if (p.detective == owner_) {
            std::optional<Role> role;
            if (p.alignment == Alignment::Mafia) role = Role::Mafia;
            facts_.push_back({FactKind::InvestigationCheck, p.target, p.alignment, role, e.seq, e.day});
        }
        break;
    }
    default:
        break; // structural events carry no profile signal
    }
}

std::vector<ContradictionRecord> RevacMemory::detect_contradictions() const {
    std::vector<ContradictionRecord> out;

    // Counter-claims: two or more living players asserting the same unique role.
    for (Role role : {Role::Doctor, Role::Detective}) {
        std::vector<std::pair<int, const ProfileClaim*>> claimants;
        for (const auto& prof : profiles_) {
            if (!graph_.node(prof.id).alive) continue;
            const ProfileClaim* latest = nullptr;
            for (const auto& c : prof.claims) {
                if (c.role == role && (!latest || c.seq > latest->seq)) latest = &c;
            }
            if (latest) claimants.emplace_back(prof.id, latest);
        }
        if (claimants.size() >= 2) {
            ContradictionRecord rec;
            rec.kind = ContradictionKind::CounterClaim;
            rec.subject = claimants.front().first;
            for (std::size_t i = 1; i < claimants.size(); ++i) rec.others.push_back(claimants[i].first);
            for (const auto& [id, claim] : claimants) {
                (void)id;
                rec.evidence.push_back(claim->seq);
                rec.day = std::max(rec.day, claim->day);
            }
            out.push_back(std::move(rec));
        }
    }

    for (const auto& prof : profiles_) {
        // Self-contradiction: two differing explicit role claims.
        const ProfileClaim* first_explicit = nullptr;
        for (const auto& c : prof.claims) {
            if (!c.explicit_claim) continue;
            if (!first_explicit) {
                first_explicit = &c;
            } else if (c.role != first_explicit->role) {
                out.push_back({prof.id,
                               {},
                               ContradictionKind::SelfContradiction,
                               {first_explicit->seq, c.seq},
                               c.day});
                break;
            }
        }

        // Ability talk incompatible with the player's explicit claim.
        for (const auto& c : prof.claims) {
            if (!c.via_ability) continue;
            if (first_explicit && first_explicit->role != c.role) {
                out.push_back({prof.id,
                               {},
                               ContradictionKind::RoleAbilityMismatch,
                               {first_explicit->seq, c.seq},
                               std::max(first_explicit->day, c.day)});
                break;
            }
        }

        // Night action described against a player who was already dead that
        // night.
        for (const auto& c : prof.claims) {
            if (!c.via_ability || !c.ability_target) continue;
            auto it = death_day_.find(*c.ability_target);
            if (it != death_day_.end() && it->second < c.day) {
                out.push_back({prof.id,
                               {*c.ability_target},
                               ContradictionKind::ImpossibleReference,
                               {c.seq},
                               c.day});
                break;
            }
        }
    }
    return out;
}

nlohmann::json RevacMemory::to_json() const {
    nlohmann::json profiles = nlohmann::json::array();
    for (const auto& prof : profiles_) {
        nlohmann::json claims = nlohmann::json::array();
        for (const auto& c : prof.claims) {
            nlohmann::json jc = {{"role", mafia::to_string(c.role)},
                                 {"day", c.day},
                                 {"seq", c.seq},
                                 {"explicit", c.explicit_claim}};
            if (c.via_ability) jc["via_ability"] = mafia::to_string(*c.via_ability);
            if (c.ability_target) jc["ability_target"] = *c.ability_target;
            claims.push_back(std::move(jc));
        }
        nlohmann::json votes = nlohmann::json::array();
        for (const auto& v : prof.votes_cast) {
            votes.push_back({{"target", v.target}, {"day", v.day}, {"seq", v.seq}});
        }
        profiles.push_back({{"id", prof.id},
                            {"claims", claims},
                            {"votes", votes},
                            {"digest", prof.statement_digest}});
    }
    nlohmann::json facts = nlohmann::json::array();
    for (const auto& f : facts_) {
        nlohmann::json jf = {{"subject", f.subject},
                             {"alignment", mafia::to_string(f.alignment)},
                             {"source_seq", f.source_seq},
                             {"day", f.day}};
        if (f.role) jf["role"] = mafia::to_string(*f.role);
        facts.push_back(std::move(jf));
    }
    return {{"owner", owner_},
            {"last_seq", last_seq_},
            {"profiles", profiles},
            {"graph", graph_.to_json()},
            {"confirmed_facts", facts}};
}

bool validate_contradiction(const ContradictionRecord& rec, const std::vector<Event>& events) {
    if (rec.evidence.empty()) return false;
    auto find_event = [&](int seq) -> const Event* {
        for (const auto& e : events) {
            if (e.seq == seq) return &e;
        }
        return nullptr;
    };
    auto claims_in = [](const Event& e) {
        std::vector<sag::SocialAct> cs;
        if (const auto* st = e.get<ev::StatementMade>()) {
            for (const auto& a : st->acts) {
                if (a.kind == sag::ActKind::ClaimRole && a.role) cs.push_back(a);
            }
        }
        return cs;
    };

    std::vector<const Event*> ev_ptrs;
    for (int seq : rec.evidence) {
        const Event* e = find_event(seq);
        if (!e) return false;
        ev_ptrs.push_back(e);
    }

    switch (rec.kind) {
    case ContradictionKind::CounterClaim: {
        if (ev_ptrs.size() < 2) return false;
        std::optional<Role> role;
        std::vector<int> speakers;
        for (const Event* e : ev_ptrs) {
            bool found = false;
            for (const auto& c : claims_in(*e)) {
                if (!is_unique_role(*c.role)) continue;
                if (!role || *role == *c.role) {
                    role = *c.role;
                    speakers.push_back(c.src);
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        std::sort(speakers.begin(), speakers.end());
        return std::adjacent_find(speakers.begin(), speakers.end()) == speakers.end();
    }
    case ContradictionKind::SelfContradiction: {
        if (ev_ptrs.size() != 2) return false;
        std::optional<Role> a, b;
        for (const auto& c : claims_in(*ev_ptrs[0])) {
            if (c.src == rec.subject && !c.via_ability) a = *c.role;
        }
        for (const auto& c : claims_in(*ev_ptrs[1])) {
            if (c.src == rec.subject && !c.via_ability) b = *c.role;
        }
        return a && b && *a != *b;
    }
    case ContradictionKind::RoleAbilityMismatch: {
        if (ev_ptrs.size() != 2) return false;
        std::optional<Role> stated, implied;
        for (const auto& c : claims_in(*ev_ptrs[0])) {
            if (c.src == rec.subject && !c.via_ability) stated = *c.role;
        }
        for (const auto& c : claims_in(*ev_ptrs[1])) {
            if (c.src == rec.subject && c.via_ability) implied = *c.role;
        }
        return stated && implied && *stated != *implied;
    }
    case ContradictionKind::ImpossibleReference: {
        if (ev_ptrs.size() != 1 || rec.others.empty()) return false;
        const int target = rec.others.front();
        std::optional<int> claim_day;
        for (const auto& c : claims_in(*ev_ptrs[0])) {
            if (c.src == rec.subject && c.via_ability && c.ability_target == target) {
                claim_day = ev_ptrs[0]->day;
            }
        }
        if (!claim_day) return false;
        for (const auto& e : events) {
            if (const auto* el = e.get<ev::PlayerEliminated>()) {
                if (el->player == target && e.day < *claim_day) return true;
            }
        }
        return false;
    }
    }
    return false;
}

} // namespace mafia::mem
