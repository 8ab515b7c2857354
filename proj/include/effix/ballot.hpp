#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "effix/efficiency.hpp"
#include "effix/errors.hpp"
#include "effix/profile.hpp"

namespace effix {

enum class Side { A, B };

struct Envelope {
    std::string label;
    Side side = Side::A;
    unsigned long slips = 1;

    bool operator==(const Envelope&) const = default;
};

/// Envelopes (outcome order = list order) and one count permutation per agent.
struct BallotSpec {
    std::vector<Envelope> envelopes;
    std::vector<std::vector<std::string>> permutations;

    bool simple() const {
        return std::all_of(envelopes.begin(), envelopes.end(), [](const Envelope& e) { return e.slips == 1; });
    }
    bool operator==(const BallotSpec&) const = default;
};

struct BallotViolation {
    enum class Kind { slip_balance, prefix, pair };
    Kind kind = Kind::slip_balance;
    std::size_t permutation = 0;  // prefix: offending permutation
    std::size_t prefix = 0;       // prefix: length of the first failing prefix
    std::string first, second;    // pair: envelopes never ordered second-before-first

    std::string describe() const {
        switch (kind) {
            case Kind::slip_balance:
                return "slip balance: A and B slip totals differ";
            case Kind::prefix:
                return "condition (i): permutation " + std::to_string(permutation) + " has more B than A slips after prefix " +
                       std::to_string(prefix);
            case Kind::pair:
                return "condition (ii): no permutation puts '" + second + "' before '" + first + "'";
        }
        return "?";
    }
};

inline const char* to_string(BallotViolation::Kind k) {
    switch (k) {
        case BallotViolation::Kind::slip_balance:
            return "slip_balance";
        case BallotViolation::Kind::prefix:
            return "prefix";
        case BallotViolation::Kind::pair:
            return "pair";
    }
    return "?";
}

struct BallotVerdict {
    bool valid = true;
    std::optional<BallotViolation> violation;
};

namespace detail {

// Structural checks: labels unique, slips positive, every permutation orders all envelopes.
inline std::unordered_map<std::string, std::size_t> index_envelopes(const BallotSpec& spec) {
    if (spec.envelopes.empty()) throw InputError("ballot spec has no envelopes");
    if (spec.permutations.empty()) throw InputError("ballot spec has no permutations");
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t k = 0; k < spec.envelopes.size(); ++k) {
        const Envelope& e = spec.envelopes[k];
        if (e.label.empty()) throw InputError("empty envelope label");
        if (e.slips == 0) throw InputError("envelope '" + e.label + "' has no slips");
        if (!idx.emplace(e.label, k).second) throw InputError("duplicate envelope '" + e.label + "'");
    }
    for (std::size_t p = 0; p < spec.permutations.size(); ++p) {
        const auto& perm = spec.permutations[p];
        std::vector<bool> seen(spec.envelopes.size(), false);
        if (perm.size() != spec.envelopes.size()) {
            throw InputError("permutation " + std::to_string(p) + " does not order every envelope");
        }
        for (const auto& label : perm) {
            auto it = idx.find(label);
            if (it == idx.end()) throw InputError("permutation " + std::to_string(p) + " names unknown envelope '" + label + "'");
            if (seen[it->second]) throw InputError("permutation " + std::to_string(p) + " repeats envelope '" + label + "'");
            seen[it->second] = true;
        }
    }
    return idx;
}

}  // namespace detail

/// Checks slip balance, then the prefix condition by (permutation, prefix length), then
/// the pair condition by envelope pairs in list order. Reports the first failure.
inline BallotVerdict verify_ballot(const BallotSpec& spec) {
    const auto idx = detail::index_envelopes(spec);
    long long balance = 0;
    for (const Envelope& e : spec.envelopes) balance += e.side == Side::A ? static_cast<long long>(e.slips) : -static_cast<long long>(e.slips);
    if (balance != 0) return {false, BallotViolation{}};

    for (std::size_t p = 0; p < spec.permutations.size(); ++p) {
        long long lead = 0;
        for (std::size_t k = 0; k < spec.permutations[p].size(); ++k) {
            const Envelope& e = spec.envelopes[idx.at(spec.permutations[p][k])];
            lead += e.side == Side::A ? static_cast<long long>(e.slips) : -static_cast<long long>(e.slips);
            if (lead < 0) {
                BallotViolation v;
                v.kind = BallotViolation::Kind::prefix;
                v.permutation = p;
                v.prefix = k + 1;
                return {false, v};
            }
        }
    }

    const std::size_t m = spec.envelopes.size();
    std::vector<std::vector<std::size_t>> pos(spec.permutations.size(), std::vector<std::size_t>(m));
    for (std::size_t p = 0; p < spec.permutations.size(); ++p) {
        for (std::size_t k = 0; k < m; ++k) pos[p][idx.at(spec.permutations[p][k])] = k;
    }
    for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = x + 1; y < m; ++y) {
            bool xy = false, yx = false;
            for (const auto& ps : pos) (ps[x] < ps[y] ? xy : yx) = true;
            if (!xy || !yx) {
                BallotViolation v;
                v.kind = BallotViolation::Kind::pair;
                v.first = spec.envelopes[xy ? x : y].label;
                v.second = spec.envelopes[xy ? y : x].label;
                return {false, v};
            }
        }
    }
    return {true, std::nullopt};
}

/// One strict agent per permutation ("1", "2", ...); outcomes are the envelopes.
inline PreferenceProfile ballot_to_profile(const BallotSpec& spec) {
    const BallotVerdict verdict = verify_ballot(spec);
    if (!verdict.valid) throw InputError("invalid ballot spec: " + verdict.violation->describe());
    std::vector<std::string> outcomes;
    for (const Envelope& e : spec.envelopes) outcomes.push_back(e.label);
    std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> rankings;
    for (std::size_t p = 0; p < spec.permutations.size(); ++p) {
        std::vector<std::vector<std::string>> classes;
        for (const auto& label : spec.permutations[p]) classes.push_back({label});
        rankings.emplace_back(std::to_string(p + 1), std::move(classes));
    }
    return PreferenceProfile::from_rankings(std::move(outcomes), rankings);
}

/// For a strict profile where the two efficiency notions differ: envelopes from the
/// integral improving direction (positive entries on side A, negative on side B, slips =
/// |alpha|), each agent's ranking restricted to them. None when the notions coincide.
inline std::optional<BallotSpec> extract_ballot_witness(const PreferenceProfile& profile) {
    if (!profile.is_strict()) throw InputError("ballot extraction needs strict preferences");
    const EquivalenceDecision decision = equivalence(profile);
    if (decision.coincide) return std::nullopt;
    const auto& alpha = decision.dominated->alpha;
    BallotSpec spec;
    for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) {
        if (sgn(alpha[x]) == 0) continue;
        const Integer mag = abs(alpha[x]);
        if (!mag.fits_ulong_p()) throw CapExceeded("slip count does not fit in an unsigned long");
        spec.envelopes.push_back({profile.outcomes()[x], sgn(alpha[x]) > 0 ? Side::A : Side::B, mag.get_ui()});
    }
    for (AgentIndex i = 0; i < profile.num_agents(); ++i) {
        std::vector<std::string> perm;
        for (const auto& cls : profile.agents()[i].order.classes) {
            if (sgn(alpha[cls.front()]) != 0) perm.push_back(profile.outcomes()[cls.front()]);
        }
        spec.permutations.push_back(std::move(perm));
    }
    if (!verify_ballot(spec).valid) throw std::logic_error("extract_ballot_witness: extracted spec failed verification");
    return spec;
}

/// Replaces `block` by a single outcome `new_label`, placed in the outcome list where the
/// block's first member was. The block must be contiguous for every agent. When the block
/// spans several classes, the new outcome forms its own class; outcomes sharing the
/// block's top (bottom) class without belonging to it stay just above (below).
inline PreferenceProfile retract(const PreferenceProfile& profile, const std::vector<std::string>& block,
                                 const std::string& new_label) {
    if (block.empty()) throw InputError("retraction block is empty");
    if (new_label.empty()) throw InputError("empty label for the retracted outcome");
    std::vector<bool> in_block(profile.num_outcomes(), false);
    for (const auto& label : block) {
        const OutcomeIndex x = profile.outcome_index(label);
        if (in_block[x]) throw InputError("outcome '" + label + "' repeated in the retraction block");
        in_block[x] = true;
    }
    for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) {
        if (!in_block[x] && profile.outcomes()[x] == new_label) {
            throw InputError("label '" + new_label + "' already names an outcome outside the block");
        }
    }

    std::vector<std::string> outcomes;
    std::vector<OutcomeIndex> remap(profile.num_outcomes());
    OutcomeIndex merged = profile.num_outcomes();
    for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) {
        if (in_block[x]) {
            if (merged == profile.num_outcomes()) {
                merged = outcomes.size();
                outcomes.push_back(new_label);
            }
            remap[x] = merged;
        } else {
            remap[x] = outcomes.size();
            outcomes.push_back(profile.outcomes()[x]);
        }
    }

    std::vector<Agent> agents;
    for (AgentIndex i = 0; i < profile.num_agents(); ++i) {
        const auto& classes = profile.agents()[i].order.classes;
        std::size_t lo = classes.size(), hi = 0;
        for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) {
            if (!in_block[x]) continue;
            lo = std::min(lo, profile.rank(i, x));
            hi = std::max(hi, profile.rank(i, x));
        }
        for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) {
            if (!in_block[x] && profile.rank(i, x) > lo && profile.rank(i, x) < hi) {
                throw InputError("retraction block is not adjacent for agent '" + profile.agents()[i].id + "'");
            }
        }
        Agent out{profile.agents()[i].id, {}};
        auto rest_of = [&](std::size_t k) {
            std::vector<OutcomeIndex> v;
            for (OutcomeIndex x : classes[k]) {
                if (!in_block[x]) v.push_back(remap[x]);
            }
            return v;
        };
        for (std::size_t k = 0; k < lo; ++k) out.order.classes.push_back(rest_of(k));
        if (lo == hi) {
            auto cls = rest_of(lo);
            cls.push_back(merged);
            out.order.classes.push_back(std::move(cls));
        } else {
            if (auto top = rest_of(lo); !top.empty()) out.order.classes.push_back(std::move(top));
            out.order.classes.push_back({merged});
            if (auto bottom = rest_of(hi); !bottom.empty()) out.order.classes.push_back(std::move(bottom));
        }
        for (std::size_t k = hi + 1; k < classes.size(); ++k) out.order.classes.push_back(rest_of(k));
        agents.push_back(std::move(out));
    }
    return PreferenceProfile(std::move(outcomes), std::move(agents));
}

/// Label of the k-th one-slip piece (1-based) of a split envelope.
inline std::string split_label(const std::string& label, unsigned long k) { return label + "." + std::to_string(k); }

/// Every envelope with k > 1 slips becomes k consecutive one-slip envelopes. The pieces
/// run in ascending order in even-indexed permutations and descending in odd-indexed
/// ones, so every pair of pieces is ordered both ways.
inline BallotSpec split_to_simple(const BallotSpec& spec) {
    const BallotVerdict verdict = verify_ballot(spec);
    if (!verdict.valid) throw InputError("invalid ballot spec: " + verdict.violation->describe());
    std::unordered_map<std::string, const Envelope*> by_label;
    BallotSpec out;
    for (const Envelope& e : spec.envelopes) {
        by_label.emplace(e.label, &e);
        if (e.slips == 1) {
            out.envelopes.push_back(e);
        } else {
            for (unsigned long k = 1; k <= e.slips; ++k) out.envelopes.push_back({split_label(e.label, k), e.side, 1});
        }
    }
    for (std::size_t p = 0; p < spec.permutations.size(); ++p) {
        std::vector<std::string> perm;
        for (const auto& label : spec.permutations[p]) {
            const Envelope& e = *by_label.at(label);
            if (e.slips == 1) {
                perm.push_back(label);
                continue;
            }
            for (unsigned long k = 1; k <= e.slips; ++k) perm.push_back(split_label(label, p % 2 == 0 ? k : e.slips + 1 - k));
        }
        out.permutations.push_back(std::move(perm));
    }
    detail::index_envelopes(out);  // rejects label collisions such as an existing "X.1"
    if (!verify_ballot(out).valid) throw std::logic_error("split_to_simple: split spec failed verification");
    return out;
}

/// Retracts every split group of `split` back to its source envelope of `original`.
inline PreferenceProfile retract_split(const BallotSpec& original, const BallotSpec& split) {
    PreferenceProfile profile = ballot_to_profile(split);
    for (const Envelope& e : original.envelopes) {
        if (e.slips == 1) continue;
        std::vector<std::string> block;
        for (unsigned long k = 1; k <= e.slips; ++k) block.push_back(split_label(e.label, k));
        profile = retract(profile, block, e.label);
    }
    return profile;
}

}  // namespace effix
