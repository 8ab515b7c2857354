#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "effix/effix.hpp"

namespace effix::cli {

/// A self-audit of an emitted certificate failed.
class AuditFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

inline std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    std::ostringstream ss;
    for (unsigned int k = 0; k < len; ++k) ss << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[k]);
    return "sha256:" + ss.str();
}

/// Hash over several inputs, each length-prefixed so that boundaries are unambiguous.
inline std::string digest_of(const std::vector<std::string>& parts) {
    std::string joined;
    for (const auto& p : parts) joined += std::to_string(p.size()) + ":" + p;
    return sha256_hex(joined);
}

struct Outcome {
    Json result;
    std::string digest;
    std::optional<std::uint64_t> seed;
};

inline void audit(bool ok, const std::string& what) {
    if (!ok) throw AuditFailure("certificate self-audit failed: " + what);
}

// ---------------------------------------------------------------------------

inline Outcome pareto(const std::string& profile_path) {
    const std::string text = read_file(profile_path);
    const PreferenceProfile profile = parse_profile(text);
    return {Json{{"pareto", outcome_labels(profile, pareto_set(profile))}}, digest_of({text}), std::nullopt};
}

inline std::size_t factorial_cap_from_env() {
    const char* env = std::getenv("EFFIX_FACTORIAL_CAP");
    if (env == nullptr || *env == '\0') return RsdExact{}.factorial_cap;
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0) throw InputError("EFFIX_FACTORIAL_CAP must be a positive integer");
    return v;
}

inline Outcome rsd(const std::string& profile_path, std::optional<std::uint64_t> sample, std::uint64_t seed) {
    const std::string text = read_file(profile_path);
    const PreferenceProfile profile = parse_profile(text);
    Outcome out{Json::object(), digest_of({text}), std::nullopt};
    Lottery p = sample ? effix::rsd(profile, RsdSampled{*sample, seed}) : effix::rsd(profile, RsdExact{factorial_cap_from_env()});
    out.result["mode"] = sample ? "sampled" : "exact";
    if (sample) {
        out.result["trials"] = *sample;
        out.seed = seed;
    }
    out.result["lottery"] = lottery_to_json(profile, p);
    out.result["ex_post_efficient"] = rsd_is_ex_post_efficient(profile, p);
    return out;
}

inline Outcome efficient(const std::string& profile_path, const std::string& lottery_path, bool verify,
                         bool dominating_only) {
    const std::string ptext = read_file(profile_path);
    const std::string ltext = read_file(lottery_path);
    const PreferenceProfile profile = parse_profile(ptext);
    const Lottery p = parse_lottery(profile, ltext);
    const EfficiencyCertificate cert = is_ex_ante_efficient(profile, p);
    if (verify) audit(verify_certificate(profile, p, cert), "efficiency certificate");
    Json result{{"verdict", cert.efficient() ? "efficient" : "dominated"}};
    if (dominating_only) {
        result["dominating"] = cert.efficient() ? Json(nullptr) : lottery_to_json(profile, cert.dominated().dominating);
    } else {
        result["certificate"] = certificate_to_json(profile, cert);
    }
    return {std::move(result), digest_of({ptext, ltext}), std::nullopt};
}

/// Checks a profile-level decision by substitution.
inline bool equivalence_holds_up(const PreferenceProfile& profile, const EquivalenceDecision& d) {
    const Lottery uniform = Lottery::uniform(profile.num_outcomes(), d.pareto);
    if (d.coincide) {
        const UtilityProfile& u = *d.utilities;
        if (!is_utilitarian_representation(profile, u)) return false;
        const Rational top = u.welfare(d.pareto.front());
        for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) {
            const bool in_pareto = std::binary_search(d.pareto.begin(), d.pareto.end(), x);
            if (in_pareto ? u.welfare(x) != top : u.welfare(x) > top) return false;
        }
        return true;
    }
    return sd_compare(profile, d.dominated->dominating, uniform).relation == Dominance::strictly_dominates &&
           witness_sequences_valid(profile, *d.witness);
}

inline Json equivalence_json(const PreferenceProfile& profile, bool verify) {
    const EquivalenceDecision d = equivalence(profile);
    if (verify) audit(equivalence_holds_up(profile, d), "equivalence decision");
    Json result{{"coincide", d.coincide}, {"pareto", outcome_labels(profile, d.pareto)}};
    const DedupResult dedup = dedup_equivalent_outcomes(profile);
    if (dedup.reduced.num_outcomes() != profile.num_outcomes()) {
        Json merge = Json::object();
        for (const auto& [from, to] : dedup.merge) {
            if (from != to) merge[from] = to;
        }
        result["merged"] = std::move(merge);
    }
    if (d.coincide) {
        result["certificate"] = {{"kind", "efficient"},
                                 {"utilities", utilities_to_json(profile, *d.utilities)},
                                 {"welfare", to_string(d.utilities->welfare(d.pareto.front()))}};
        if (auto view = as_dichotomous(profile)) {
            auto lambda = dichotomous_lambda(*view);
            if (verify) audit(lambda && lambda_certifies(*view, *lambda), "dichotomous weights");
            if (lambda) result["lambda"] = lambda_to_json(profile, *lambda);
        }
        return result;
    }
    Json cert{{"kind", "dominated"},
              {"alpha", alpha_to_json(profile, d.dominated->alpha)},
              {"dominating", lottery_to_json(profile, d.dominated->dominating)}};
    if (d.dominated->strict_row) {
        cert["strict_row"] = {{"agent", profile.agents()[d.dominated->strict_row->agent].id},
                              {"outcome", profile.outcomes()[d.dominated->strict_row->outcome]}};
    }
    result["certificate"] = std::move(cert);
    result["witness"] = witness_to_json(profile, *d.witness);
    if (profile.is_strict()) {
        auto spec = extract_ballot_witness(profile);
        if (verify) audit(spec && verify_ballot(*spec).valid, "extracted ballot spec");
        if (spec) result["ballot"] = ballot_to_json(*spec);
    }
    return result;
}

inline Outcome equivalence(const std::string& profile_path, bool verify) {
    const std::string text = read_file(profile_path);
    const PreferenceProfile profile = parse_profile(text);
    return {equivalence_json(profile, verify), digest_of({text}), std::nullopt};
}

inline Outcome reverse(const std::string& profile_path) {
    const std::string text = read_file(profile_path);
    const PreferenceProfile profile = parse_profile(text);
    return {Json{{"profile", profile_to_json(reverse_profile(profile))}}, digest_of({text}), std::nullopt};
}

inline Outcome ballot(const std::string& action, const std::string& spec_path) {
    const std::string text = read_file(spec_path);
    const BallotSpec spec = parse_ballot(text);
    Outcome out{Json{{"action", action}}, digest_of({text}), std::nullopt};
    if (action == "verify") {
        out.result["verdict"] = ballot_verdict_to_json(verify_ballot(spec));
    } else if (action == "build") {
        out.result["profile"] = profile_to_json(ballot_to_profile(spec));
    } else if (action == "split") {
        out.result["spec"] = ballot_to_json(split_to_simple(spec));
    } else {
        throw InputError("unknown ballot action '" + action + "'");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Census

struct CensusOptions {
    std::string domain = "strict";
    std::size_t agents = 3;
    std::size_t outcomes = 3;
    std::uint64_t trials = 100;
    std::uint64_t seed = 0;
    bool exhaustive = false;
    bool antichains = false;
    std::optional<std::string> csv;
    bool verify = true;
};

inline Outcome census(const CensusOptions& o) {
    if (o.domain != "strict" && o.domain != "dichotomous" && o.domain != "single-peaked") {
        throw InputError("unknown domain '" + o.domain + "'");
    }
    if (o.agents == 0 || o.outcomes == 0) throw InputError("census needs at least one agent and one outcome");
    if (o.antichains && (!o.exhaustive || o.domain != "dichotomous")) {
        throw InputError("--antichains applies to --exhaustive dichotomous censuses only");
    }
    if (!o.exhaustive && o.trials == 0) throw InputError("--trials must be positive");

    std::uint64_t total = 0, coincide = 0;
    Json counterexamples = Json::array();
    std::ostringstream csv;
    csv << "index,coincide,pareto_size,digest\n";
    const std::vector<std::string> axis = default_outcome_labels(o.outcomes);
    std::vector<OutcomeIndex> axis_idx(o.outcomes);
    for (std::size_t x = 0; x < o.outcomes; ++x) axis_idx[x] = x;

    auto visit = [&](const PreferenceProfile& profile) {
        const EquivalenceDecision d = equivalence(profile);
        if (o.verify) audit(equivalence_holds_up(profile, d), "equivalence decision in census");
        const std::string digest = sha256_hex(serialize_profile(profile));
        if (d.coincide) {
            ++coincide;
        } else if (counterexamples.size() < 20) {
            counterexamples.push_back(digest);
        }
        csv << total << ',' << (d.coincide ? 1 : 0) << ',' << d.pareto.size() << ',' << digest << '\n';
        ++total;
    };

    Outcome out{Json::object(), "", std::nullopt};
    if (o.exhaustive) {
        if (o.domain == "dichotomous" && o.antichains) {
            for (const auto& cols : antichains(o.agents, o.outcomes)) visit(profile_from_columns(o.agents, cols));
        } else {
            ProfileEnumerator e(o.agents, axis, o.domain == "dichotomous" ? ProfileKind::dichotomous : ProfileKind::strict);
            while (auto p = e.next()) {
                if (o.domain == "single-peaked" && !is_single_peaked(*p, axis_idx)) continue;
                visit(*p);
            }
        }
    } else {
        Rng rng(o.seed);
        for (std::uint64_t t = 0; t < o.trials; ++t) {
            if (o.domain == "strict") {
                visit(random_strict_profile(o.agents, o.outcomes, rng));
            } else if (o.domain == "dichotomous") {
                visit(random_dichotomous_profile(o.agents, o.outcomes, rng));
            } else {
                visit(generate_single_peaked(axis, o.agents, rng.below(UINT64_MAX)));
            }
        }
        out.seed = o.seed;
    }
    if (total == 0) throw InputError("census visited no profiles");

    Rational fraction(static_cast<unsigned long>(coincide), static_cast<unsigned long>(total));
    fraction.canonicalize();
    out.result = Json{{"domain", o.domain},
                      {"agents", o.agents},
                      {"outcomes", o.outcomes},
                      {"exhaustive", o.exhaustive},
                      {"profiles", total},
                      {"coincide", coincide},
                      {"fraction", to_string(fraction)},
                      {"fraction_decimal", static_cast<double>(coincide) / static_cast<double>(total)},
                      {"counterexample_digests", std::move(counterexamples)}};
    if (o.antichains) out.result["antichains"] = true;
    if (o.csv) write_file(*o.csv, csv.str());

    std::ostringstream args;
    args << "census domain=" << o.domain << " agents=" << o.agents << " outcomes=" << o.outcomes
         << " exhaustive=" << o.exhaustive << " antichains=" << o.antichains;
    if (!o.exhaustive) args << " trials=" << o.trials << " seed=" << o.seed;
    out.digest = sha256_hex(args.str());
    return out;
}

}  // namespace effix::cli
