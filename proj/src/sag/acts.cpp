#include "mafia/sag/acts.hpp"

namespace mafia::sag {

std::string to_string(ActKind k) {
    switch (k) {
    case ActKind::Accuse: return "accuse";
    case ActKind::Defend: return "defend";
    case ActKind::ClaimRole: return "claim_role";
    case ActKind::VoteAlign: return "vote_align";
    }
    return "accuse";
}

ActKind act_kind_from_string(const std::string& s) {
    if (s == "accuse") return ActKind::Accuse;
    if (s == "defend") return ActKind::Defend;
    if (s == "claim_role") return ActKind::ClaimRole;
    if (s == "vote_align") return ActKind::VoteAlign;
    throw RuleError(RuleError::Code::BadArgument, "unknown act kind: " + s);
}

void to_json(nlohmann::json& j, const SocialAct& a) {
    j = {{"kind", to_string(a.kind)}, {"src", a.src}, {"day", a.day}, {"turn", a.turn}};
    if (a.kind == ActKind::ClaimRole) {
        j["role"] = a.role ? nlohmann::json(mafia::to_string(*a.role)) : nlohmann::json(nullptr);
        if (a.via_ability) j["via_ability"] = mafia::to_string(*a.via_ability);
        if (a.ability_target) j["ability_target"] = *a.ability_target;
    } else {
        j["dst"] = a.dst;
    }
}

void from_json(const nlohmann::json& j, SocialAct& a) {
    a = SocialAct{};
    a.kind = act_kind_from_string(j.at("kind").get<std::string>());
    a.src = j.at("src").get<int>();
    a.day = j.at("day").get<int>();
    a.turn = j.at("turn").get<int>();
    if (a.kind == ActKind::ClaimRole) {
        if (j.contains("role") && !j.at("role").is_null()) {
            a.role = role_from_string(j.at("role").get<std::string>());
        }
        if (j.contains("via_ability")) {
            a.via_ability = night_action_from_string(j.at("via_ability").get<std::string>());
        }
        if (j.contains("ability_target")) a.ability_target = j.at("ability_target").get<int>();
    } else {
        a.dst = j.at("dst").get<int>();
    }
}

} // namespace mafia::sag
