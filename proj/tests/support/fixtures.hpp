#pragma once

#include <string>
#include <vector>

#include "effix/effix.hpp"

namespace fixtures {

using effix::BallotSpec;
using effix::PreferenceProfile;
using effix::Side;

// Two interlacing Condorcet cycles over {a,b,c} and {x,y,z}.
inline PreferenceProfile interlaced_cycles() {
    return PreferenceProfile::from_rankings({"a", "b", "c", "x", "y", "z"},
                                            {{"1", {{"a"}, {"x"}, {"b"}, {"y"}, {"c"}, {"z"}}},
                                             {"2", {{"b"}, {"z"}, {"c"}, {"x"}, {"a"}, {"y"}}},
                                             {"3", {{"c"}, {"y"}, {"a"}, {"z"}, {"b"}, {"x"}}}});
}

// Five approval ballots over four outcomes; RSD is not ex-ante efficient here.
inline PreferenceProfile five_approvals() {
    return PreferenceProfile::from_approvals(
        {"a", "b", "c", "d"},
        {{"1", {"a", "c"}}, {"2", {"b", "d"}}, {"3", {"a", "d"}}, {"4", {"a"}}, {"5", {"b", "c"}}});
}

inline PreferenceProfile four_singletons() {
    return PreferenceProfile::from_approvals({"a", "b", "c", "d"},
                                             {{"1", {"a"}}, {"2", {"b"}}, {"3", {"c"}}, {"4", {"d"}}});
}

inline PreferenceProfile four_weighted() {
    return PreferenceProfile::from_approvals({"a", "b", "c", "d"},
                                             {{"1", {"b", "c"}}, {"2", {"a", "c"}}, {"3", {"a", "b"}}, {"4", {"d"}}});
}

inline BallotSpec make_spec(const std::vector<std::pair<std::string, unsigned long>>& a_side,
                            const std::vector<std::pair<std::string, unsigned long>>& b_side,
                            std::vector<std::vector<std::string>> perms) {
    BallotSpec spec;
    for (const auto& [l, k] : a_side) spec.envelopes.push_back({l, Side::A, k});
    for (const auto& [l, k] : b_side) spec.envelopes.push_back({l, Side::B, k});
    spec.permutations = std::move(perms);
    return spec;
}

// Three cyclic permutations over six one-slip envelopes.
inline BallotSpec ballot_3x6() {
    return make_spec({{"A1", 1}, {"A2", 1}, {"A3", 1}}, {{"B1", 1}, {"B2", 1}, {"B3", 1}},
                     {{"A1", "B1", "A2", "B2", "A3", "B3"},
                      {"A2", "B3", "A3", "B1", "A1", "B2"},
                      {"A3", "B2", "A1", "B3", "A2", "B1"}});
}

// Four envelopes, four permutations: the smallest failing size.
inline BallotSpec ballot_4x4() {
    return make_spec({{"A1", 1}, {"A2", 1}}, {{"B1", 1}, {"B2", 1}},
                     {{"A1", "B1", "A2", "B2"}, {"A2", "B1", "A1", "B2"}, {"A1", "B2", "A2", "B1"}, {"A2", "B2", "A1", "B1"}});
}

// Twelve AABAAB permutations; B envelopes carry two slips each.
inline BallotSpec ballot_12x6() {
    const std::vector<std::vector<std::string>> heads{{"A1", "A2", "A3", "A4"}, {"A1", "A3", "A2", "A4"},
                                                      {"A1", "A4", "A3", "A2"}, {"A2", "A3", "A1", "A4"},
                                                      {"A2", "A4", "A1", "A3"}, {"A3", "A4", "A1", "A2"}};
    std::vector<std::vector<std::string>> perms;
    for (const auto* order : {"12", "21"}) {
        const std::string first = std::string("B") + order[0];
        const std::string second = std::string("B") + order[1];
        for (const auto& h : heads) perms.push_back({h[0], h[1], first, h[2], h[3], second});
    }
    return make_spec({{"A1", 1}, {"A2", 1}, {"A3", 1}, {"A4", 1}}, {{"B1", 2}, {"B2", 2}}, std::move(perms));
}

inline std::vector<effix::OutcomeIndex> indices(const PreferenceProfile& p, const std::vector<std::string>& labels) {
    std::vector<effix::OutcomeIndex> out;
    for (const auto& l : labels) out.push_back(p.outcome_index(l));
    return out;
}

inline effix::Lottery uniform_on(const PreferenceProfile& p, const std::vector<std::string>& labels) {
    return effix::Lottery::uniform(p.num_outcomes(), indices(p, labels));
}

}  // namespace fixtures
