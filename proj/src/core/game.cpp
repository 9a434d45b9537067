#include "mafia/core/game.hpp"

#include <algorithm>

#include "mafia/util/rng.hpp"

namespace mafia {

GameState GameState::new_game(const GameConfig& config) {
    config.validate();
    std::vector<Role> roles;
    roles.reserve(config.num_players);
    for (Role r : kAllRoles) {
        for (int i = 0; i < config.count(r); ++i) roles.push_back(r);
    }
    Rng rng(config.seed);
    rng.shuffle(roles);
    return with_roles(config, roles);
}

GameState GameState::with_roles(const GameConfig& config, const std::vector<Role>& roles) {
    config.validate();
    if (static_cast<int>(roles.size()) != config.num_players) {
        throw RuleError(RuleError::Code::BadConfig, "role list size != num_players");
    }
    for (Role r : kAllRoles) {
        int n = static_cast<int>(std::count(roles.begin(), roles.end(), r));
        if (n != config.count(r)) {
            throw RuleError(RuleError::Code::BadConfig,
                            "role list does not match configured counts for " + to_string(r));
        }
    }

    GameState g;
    g.cfg_ = config;
    g.players_.reserve(roles.size());
    for (int i = 0; i < static_cast<int>(roles.size()); ++i) {
        g.players_.push_back(PlayerState{i, roles[i], true});
    }
    g.phase_ = Phase::night(0);
    g.append(EventKind::GameStarted, ev::GameStarted{config});
    return g;
}

Role GameState::role_of(int id) const {
    require_player(id);
    return players_[id].role;
}

std::vector<int> GameState::living_ids() const {
    std::vector<int> out;
    for (const auto& p : players_) {
        if (p.alive) out.push_back(p.id);
    }
    return out;
}

int GameState::living_count() const {
    return static_cast<int>(std::count_if(players_.begin(), players_.end(),
                                          [](const PlayerState& p) { return p.alive; }));
}

int GameState::living_count(Alignment a) const {
    return static_cast<int>(std::count_if(players_.begin(), players_.end(), [a](const PlayerState& p) {
        return p.alive && alignment_of(p.role) == a;
    }));
}

NightBuffer GameState::night_buffer() const {
    NightBuffer buf;
    buf.doctor_target = doctor_target_;
    buf.detective_target = detective_target_;
    for (const auto& [actor, target] : mafia_choices_) {
        if (alive(actor)) {
            buf.mafia_target = target;
            break; // map is id-ordered: lowest-id living submitter wins
        }
    }
    return buf;
}

void GameState::require_phase_night() const {
    if (!phase_.is_night()) {
        throw RuleError(RuleError::Code::WrongPhase, "not a night phase");
    }
}

void GameState::require_player(int id) const {
    if (!exists(id)) {
        throw RuleError(RuleError::Code::UnknownPlayer, "no player P" + std::to_string(id));
    }
}

void GameState::require_alive(int id, const char* who) const {
    require_player(id);
    if (!players_[id].alive) {
        throw RuleError(RuleError::Code::DeadActor,
                        std::string(who) + " P" + std::to_string(id) + " is dead");
    }
}

Event& GameState::append(EventKind kind, ev::Payload payload, std::vector<int> visibility) {
    std::sort(visibility.begin(), visibility.end());
    Event e;
    e.seq = static_cast<int>(log_.size());
    e.day = phase_.day;
    e.phase = phase_.label();
    e.kind = kind;
    e.visibility = std::move(visibility);
    e.payload = std::move(payload);
    log_.push_back(std::move(e));
    return log_.back();
}

void GameState::submit_night_action(int actor, const NightAction& action) {
    require_phase_night();
    require_alive(actor, "actor");
    require_player(action.target);
    if (!players_[action.target].alive) {
        throw RuleError(RuleError::Code::IllegalTarget,
                        "target P" + std::to_string(action.target) + " is dead");
    }

    Role role = players_[actor].role;
    std::vector<int> visibility;
    switch (action.kind) {
    case NightActionKind::Kill:
        if (role != Role::Mafia) {
            throw RuleError(RuleError::Code::RoleMismatch, "only mafia may kill");
        }
        mafia_choices_[actor] = action.target;
        for (const auto& p : players_) {
            if (p.role == Role::Mafia && p.alive) visibility.push_back(p.id);
        }
        break;
    case NightActionKind::Protect:
        if (role != Role::Doctor) {
            throw RuleError(RuleError::Code::RoleMismatch, "only the doctor may protect");
        }
        doctor_target_ = action.target;
        visibility = {actor};
        break;
    case NightActionKind::Investigate:
        if (role != Role::Detective) {
            throw RuleError(RuleError::Code::RoleMismatch, "only the detective may investigate");
        }
        detective_target_ = action.target;
        visibility = {actor};
        break;
    }
    append(EventKind::NightActionSubmitted,
           ev::NightActionSubmitted{actor, action.kind, action.target}, std::move(visibility));
}

void GameState::resolve_night() {
    require_phase_night();
    const int day = phase_.day;
    const NightBuffer buf = night_buffer();

    const bool blocked = buf.mafia_target && buf.doctor_target &&
                         *buf.mafia_target == *buf.doctor_target;
    if (blocked) {
        int doctor = -1;
        for (const auto& p : players_) {
            if (p.role == Role::Doctor) doctor = p.id;
        }
        append(EventKind::ProtectionApplied, ev::ProtectionApplied{}, {doctor});
    }

    if (buf.detective_target) {
        int det = -1;
        for (const auto& p : players_) {
            if (p.role == Role::Detective) det = p.id;
        }
        append(EventKind::InvestigationResult,
               ev::InvestigationResult{det, *buf.detective_target,
                                       alignment_of(players_[*buf.detective_target].role)},
               {det});
    }

    std::optional<int> death;
    if (buf.mafia_target && !blocked) death = *buf.mafia_target;
    append(EventKind::NightResolved, ev::NightResolved{death});
    if (death) eliminate(*death);

    mafia_choices_.clear();
    doctor_target_.reset();
    detective_target_.reset();

    if (!maybe_end()) enter_day(day);
}

void GameState::enter_day(int day) {
    statements_today_ = 0;
    statement_quota_ = cfg_.discussion_rounds_per_day * living_count();
    phase_ = Phase::day_phase(
        day, statement_quota_ > 0 ? DayStage::Discussion : DayStage::Voting);
    votes_.clear();
}

void GameState::record_statement(int speaker, const std::string& text,
                                 const std::vector<sag::SocialAct>& acts) {
    if (!phase_.is_day(DayStage::Discussion)) {
        throw RuleError(RuleError::Code::WrongPhase, "not in day discussion");
    }
    require_alive(speaker, "speaker");
    for (const auto& a : acts) {
        if (a.src != speaker) {
            throw RuleError(RuleError::Code::BadArgument, "act source must be the speaker");
        }
        if (a.kind != sag::ActKind::ClaimRole && !exists(a.dst)) {
            throw RuleError(RuleError::Code::UnknownPlayer, "act target outside roster");
        }
    }
    append(EventKind::StatementMade, ev::StatementMade{speaker, text, acts});
    if (++statements_today_ >= statement_quota_) {
        phase_ = Phase::day_phase(phase_.day, DayStage::Voting);
    }
}

void GameState::cast_vote(int voter, int target) {
    if (!phase_.is_day(DayStage::Voting)) {
        throw RuleError(RuleError::Code::WrongPhase, "not in day voting");
    }
    require_alive(voter, "voter");
    require_alive(target, "vote target");
    votes_[voter] = target; // re-vote overwrites
    append(EventKind::VoteCast, ev::VoteCast{voter, target});
}

std::optional<int> GameState::tally_votes() {
    if (!phase_.is_day(DayStage::Voting)) {
        throw RuleError(RuleError::Code::WrongPhase, "not in day voting");
    }
    const int day = phase_.day;

    std::map<int, int> counts;
    for (const auto& [voter, target] : votes_) {
        if (alive(voter)) counts[target] += 1;
    }
    std::optional<int> eliminated;
    int best = 0;
    bool unique = false;
    for (const auto& [target, n] : counts) {
        if (n > best) {
            best = n;
            eliminated = target;
            unique = true;
        } else if (n == best) {
            unique = false;
        }
    }
    if (!unique) eliminated.reset(); // tie or no votes: nobody leaves

    append(EventKind::VotesResolved, ev::VotesResolved{eliminated});
    if (eliminated) eliminate(*eliminated);
    votes_.clear();

    if (!maybe_end()) advance_or_end(day + 1);
    return eliminated;
}

void GameState::eliminate(int id) {
    players_[id].alive = false;
    append(EventKind::PlayerEliminated, ev::PlayerEliminated{id, players_[id].role});
}

bool GameState::maybe_end() {
    auto winner = check_win();
    if (!winner) return false;
    append(EventKind::GameEnded, ev::GameEnded{*winner});
    phase_ = Phase::ended(*winner, phase_.day);
    return true;
}

void GameState::advance_or_end(int next_night) {
    if (next_night >= cfg_.max_days) {
        // Stalemate cap: the village failed to clear the town in time.
        append(EventKind::GameEnded, ev::GameEnded{Alignment::Mafia});
        phase_ = Phase::ended(Alignment::Mafia, phase_.day);
        return;
    }
    phase_ = Phase::night(next_night);
}

std::optional<Alignment> GameState::check_win() const {
    const int mafia = living_count(Alignment::Mafia);
    const int village = living_count(Alignment::Village);
    if (mafia == 0) return Alignment::Village;
    if (mafia >= village) return Alignment::Mafia;
    return std::nullopt;
}

Observation GameState::observation_for(int viewer) const {
    require_player(viewer);

    Observation obs;
    obs.viewer = viewer;
    obs.viewer_role = players_[viewer].role;
    obs.num_players = cfg_.num_players;
    obs.config = cfg_;
    obs.phase = phase_;
    for (const auto& p : players_) {
        if (p.alive) obs.living.insert(p.id);
    }
    for (const auto& e : log_) {
        if (e.is_public()) {
            obs.public_events.push_back(e);
        } else if (e.visible_to(viewer)) {
            obs.private_events.push_back(e);
        }
    }
    if (players_[viewer].role == Role::Mafia) {
        for (const auto& p : players_) {
            if (p.role == Role::Mafia && p.id != viewer) obs.mafia_partners.push_back(p.id);
        }
    }
    return obs;
}

} // namespace mafia
