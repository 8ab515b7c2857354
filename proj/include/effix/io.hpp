#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "effix/ballot.hpp"
#include "effix/dichotomous.hpp"
#include "effix/efficiency.hpp"
#include "effix/errors.hpp"
#include "effix/lottery.hpp"
#include "effix/lp.hpp"
#include "effix/profile.hpp"
#include "effix/rational.hpp"

namespace effix {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

inline const Json& member(const Json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    return obj.at(key);
}

inline std::string as_string(const Json& v, const char* what) {
    if (!v.is_string()) throw InputError(std::string(what) + " must be a string");
    return v.get<std::string>();
}

inline Rational rational_from_json(const Json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
    throw InputError("rational literals must be strings like \"1/3\" or integers");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Profiles

inline PreferenceProfile profile_from_json(const Json& doc) {
    const Json& outs = detail::member(doc, "outcomes");
    const Json& agents = detail::member(doc, "agents");
    if (!outs.is_array() || !agents.is_array()) throw InputError("'outcomes' and 'agents' must be arrays");
    std::vector<std::string> outcomes;
    for (const Json& o : outs) outcomes.push_back(detail::as_string(o, "outcome label"));

    std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> rankings;
    for (const Json& a : agents) {
        const std::string id = detail::as_string(detail::member(a, "id"), "agent id");
        const bool has_ranking = a.contains("ranking");
        const bool has_approvals = a.contains("approvals");
        if (has_ranking == has_approvals) throw InputError("agent '" + id + "' needs exactly one of 'ranking' or 'approvals'");
        if (has_ranking) {
            const Json& r = a.at("ranking");
            if (!r.is_array()) throw InputError("agent '" + id + "' ranking must be an array of classes");
            std::vector<std::vector<std::string>> classes;
            for (const Json& cls : r) {
                if (!cls.is_array()) throw InputError("agent '" + id + "' ranking classes must be arrays");
                std::vector<std::string> members;
                for (const Json& x : cls) members.push_back(detail::as_string(x, "outcome label"));
                classes.push_back(std::move(members));
            }
            rankings.emplace_back(id, std::move(classes));
        } else {
            const Json& ap = a.at("approvals");
            if (!ap.is_array()) throw InputError("agent '" + id + "' approvals must be an array");
            std::vector<std::string> approved;
            for (const Json& x : ap) approved.push_back(detail::as_string(x, "outcome label"));
            // reuse the approval expansion for this single agent
            auto single = PreferenceProfile::from_approvals(outcomes, {{id, approved}});
            std::vector<std::vector<std::string>> classes;
            for (const auto& cls : single.agents().front().order.classes) {
                std::vector<std::string> members;
                for (OutcomeIndex x : cls) members.push_back(outcomes[x]);
                classes.push_back(std::move(members));
            }
            rankings.emplace_back(id, std::move(classes));
        }
    }
    return PreferenceProfile::from_rankings(std::move(outcomes), rankings);
}

inline PreferenceProfile parse_profile(std::string_view text) { return profile_from_json(detail::parse_json(text)); }

inline Json profile_to_json(const PreferenceProfile& profile) {
    Json doc;
    doc["outcomes"] = profile.outcomes();
    Json agents = Json::array();
    for (const Agent& a : profile.agents()) {
        Json ranking = Json::array();
        for (const auto& cls : a.order.classes) {
            Json members = Json::array();
            for (OutcomeIndex x : cls) members.push_back(profile.outcomes()[x]);
            ranking.push_back(std::move(members));
        }
        agents.push_back({{"id", a.id}, {"ranking", std::move(ranking)}});
    }
    doc["agents"] = std::move(agents);
    return doc;
}

inline std::string serialize_profile(const PreferenceProfile& profile) { return profile_to_json(profile).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Lotteries and utilities

/// Weights keyed by outcome label; omitted outcomes get weight 0.
inline Lottery lottery_from_json(const PreferenceProfile& profile, const Json& doc) {
    const Json& w = detail::member(doc, "weights");
    if (!w.is_object()) throw InputError("'weights' must be an object");
    std::vector<Rational> weights(profile.num_outcomes());
    std::vector<bool> seen(profile.num_outcomes(), false);
    for (const auto& [label, value] : w.items()) {
        const OutcomeIndex x = profile.outcome_index(label);
        if (seen[x]) throw InputError("outcome '" + label + "' weighted twice");
        seen[x] = true;
        weights[x] = detail::rational_from_json(value);
    }
    return Lottery(std::move(weights));
}

inline Lottery parse_lottery(const PreferenceProfile& profile, std::string_view text) {
    return lottery_from_json(profile, detail::parse_json(text));
}

inline Json lottery_to_json(const PreferenceProfile& profile, const Lottery& p) {
    Json w = Json::object();
    for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) w[profile.outcomes()[x]] = to_string(p[x]);
    return Json{{"weights", std::move(w)}};
}

inline Json utilities_to_json(const PreferenceProfile& profile, const UtilityProfile& u) {
    Json out = Json::object();
    for (AgentIndex i = 0; i < profile.num_agents(); ++i) {
        Json row = Json::object();
        for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) row[profile.outcomes()[x]] = to_string(u.at(i, x));
        out[profile.agents()[i].id] = std::move(row);
    }
    return out;
}

inline Json outcome_labels(const PreferenceProfile& profile, const std::vector<OutcomeIndex>& xs) {
    Json out = Json::array();
    for (OutcomeIndex x : xs) out.push_back(profile.outcomes()[x]);
    return out;
}

// ---------------------------------------------------------------------------
// Certificates

/// alpha keyed by outcome: every Pareto-optimal outcome, plus any other outcome carrying
/// a nonzero entry.
inline Json alpha_to_json(const PreferenceProfile& profile, const std::vector<Integer>& alpha) {
    const auto pareto = pareto_set(profile);
    Json out = Json::object();
    for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) {
        if (sgn(alpha[x]) != 0 || std::binary_search(pareto.begin(), pareto.end(), x)) {
            out[profile.outcomes()[x]] = to_string(alpha[x]);
        }
    }
    return out;
}

inline Json certificate_to_json(const PreferenceProfile& profile, const EfficiencyCertificate& cert) {
    if (cert.efficient()) return Json{{"kind", "efficient"}, {"utilities", utilities_to_json(profile, cert.utilities())}};
    const DominatedCertificate& d = cert.dominated();
    Json out{{"kind", "dominated"},
             {"alpha", alpha_to_json(profile, d.alpha)},
             {"dominating", lottery_to_json(profile, d.dominating)}};
    if (d.strict_row) {
        out["strict_row"] = {{"agent", profile.agents()[d.strict_row->agent].id},
                             {"outcome", profile.outcomes()[d.strict_row->outcome]}};
    }
    return out;
}

inline Json witness_to_json(const PreferenceProfile& profile, const WitnessSequences& w) {
    auto seq = [&](const std::vector<std::pair<OutcomeIndex, Integer>>& s) {
        Json out = Json::object();
        for (const auto& [x, c] : s) out[profile.outcomes()[x]] = to_string(c);
        return out;
    };
    return Json{{"a_seq", seq(w.a_seq)}, {"b_seq", seq(w.b_seq)}, {"length", to_string(w.length)}};
}

inline Json farkas_to_json(const FarkasCertificate& cert) {
    Json ineq = Json::array(), eq = Json::array();
    for (const Rational& v : cert.ineq_multipliers) ineq.push_back(to_string(v));
    for (const Rational& v : cert.eq_multipliers) eq.push_back(to_string(v));
    return Json{{"inequality_multipliers", std::move(ineq)}, {"equality_multipliers", std::move(eq)}};
}

inline Json lambda_to_json(const PreferenceProfile& profile, const LambdaCertificate& cert) {
    Json l = Json::object();
    for (AgentIndex i = 0; i < profile.num_agents(); ++i) l[profile.agents()[i].id] = to_string(cert.lambda[i]);
    return Json{{"lambda", std::move(l)}, {"constant", to_string(cert.constant)}};
}

// ---------------------------------------------------------------------------
// Ballot specs

inline BallotSpec ballot_from_json(const Json& doc) {
    const Json& env = detail::member(doc, "envelopes");
    const Json& perms = detail::member(doc, "permutations");
    if (!env.is_object() || !perms.is_array()) throw InputError("'envelopes' must be an object and 'permutations' an array");
    BallotSpec spec;
    for (const auto& [label, e] : env.items()) {
        const std::string side = detail::as_string(detail::member(e, "side"), "envelope side");
        if (side != "A" && side != "B") throw InputError("envelope '" + label + "' side must be \"A\" or \"B\"");
        const Json& slips = detail::member(e, "slips");
        if (!slips.is_number_integer() || slips.get<long long>() < 1) {
            throw InputError("envelope '" + label + "' needs a positive integer slip count");
        }
        spec.envelopes.push_back({label, side == "A" ? Side::A : Side::B, slips.get<unsigned long>()});
    }
    for (const Json& p : perms) {
        if (!p.is_array()) throw InputError("each permutation must be an array of envelope labels");
        std::vector<std::string> perm;
        for (const Json& x : p) perm.push_back(detail::as_string(x, "envelope label"));
        spec.permutations.push_back(std::move(perm));
    }
    return spec;
}

inline BallotSpec parse_ballot(std::string_view text) { return ballot_from_json(detail::parse_json(text)); }

inline Json ballot_to_json(const BallotSpec& spec) {
    Json env = Json::object();
    for (const Envelope& e : spec.envelopes) env[e.label] = {{"side", e.side == Side::A ? "A" : "B"}, {"slips", e.slips}};
    return Json{{"envelopes", std::move(env)}, {"permutations", spec.permutations}};
}

inline Json ballot_verdict_to_json(const BallotVerdict& v) {
    Json out{{"valid", v.valid}};
    if (v.violation) {
        Json viol{{"kind", to_string(v.violation->kind)}, {"message", v.violation->describe()}};
        if (v.violation->kind == BallotViolation::Kind::prefix) {
            viol["permutation"] = v.violation->permutation;
            viol["prefix"] = v.violation->prefix;
        } else if (v.violation->kind == BallotViolation::Kind::pair) {
            viol["pair"] = {v.violation->first, v.violation->second};
        }
        out["violation"] = std::move(viol);
    }
    return out;
}

}  // namespace effix
