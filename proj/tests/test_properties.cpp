#include <gtest/gtest.h>

#include <numeric>

#include "effix/effix.hpp"
#include "support/fixtures.hpp"

using namespace effix;
using fixtures::ballot_12x6;
using fixtures::ballot_3x6;
using fixtures::ballot_4x4;

namespace {

// Random lottery whose support is exactly `support`, weights k/total with k >= 1.
Lottery random_lottery_on(std::size_t m, const std::vector<OutcomeIndex>& support, Rng& rng) {
    std::vector<Integer> parts;
    Integer total = 0;
    for (std::size_t k = 0; k < support.size(); ++k) {
        parts.emplace_back(static_cast<unsigned long>(1 + rng.below(5)));
        total += parts.back();
    }
    std::vector<Rational> w(m);
    for (std::size_t k = 0; k < support.size(); ++k) {
        w[support[k]] = Rational(parts[k], total);
        w[support[k]].canonicalize();
    }
    return Lottery(std::move(w));
}

std::vector<OutcomeIndex> random_subset(const std::vector<OutcomeIndex>& from, Rng& rng) {
    std::vector<OutcomeIndex> out;
    while (out.empty()) {
        for (OutcomeIndex x : from) {
            if (rng.coin()) out.push_back(x);
        }
    }
    return out;
}

std::vector<std::vector<OutcomeIndex>> all_subsets(const std::vector<OutcomeIndex>& from) {
    std::vector<std::vector<OutcomeIndex>> out;
    for (std::uint32_t mask = 1; mask < (1U << from.size()); ++mask) {
        std::vector<OutcomeIndex> s;
        for (std::size_t k = 0; k < from.size(); ++k) {
            if ((mask >> k) & 1U) s.push_back(from[k]);
        }
        out.push_back(std::move(s));
    }
    return out;
}

PreferenceProfile random_profile(Rng& rng, std::size_t max_n, std::size_t max_m) {
    const std::size_t n = 1 + rng.below(max_n), m = 1 + rng.below(max_m);
    switch (rng.below(3)) {
        case 0:
            return random_strict_profile(n, m, rng);
        case 1:
            return random_dichotomous_profile(n, m, rng);
        default:
            return random_weak_profile(n, m, rng);
    }
}

}  // namespace

TEST(Property, PartitionAndContourMonotonicity) {
    Rng rng(101);
    for (int t = 0; t < 200; ++t) {
        const auto p = random_profile(rng, 4, 6);
        for (AgentIndex i = 0; i < p.num_agents(); ++i) {
            std::vector<int> count(p.num_outcomes(), 0);
            for (const auto& cls : p.agents()[i].order.classes) {
                for (OutcomeIndex x : cls) ++count[x];
            }
            for (int c : count) ASSERT_EQ(c, 1);
            for (OutcomeIndex x = 0; x < p.num_outcomes(); ++x) {
                for (OutcomeIndex y = 0; y < p.num_outcomes(); ++y) {
                    if (p.rank(i, x) > p.rank(i, y)) continue;
                    const auto cx = strict_upper_contour(p, i, x);
                    const auto cy = strict_upper_contour(p, i, y);
                    ASSERT_TRUE(std::includes(cy.begin(), cy.end(), cx.begin(), cx.end()));
                }
            }
        }
    }
}

TEST(Property, ReversalPreservesFlags) {
    Rng rng(102);
    for (int t = 0; t < 200; ++t) {
        const auto p = random_profile(rng, 4, 6);
        const auto r = reverse_profile(p);
        ASSERT_EQ(reverse_profile(r), p);
        ASSERT_EQ(r.is_strict(), p.is_strict());
        ASSERT_EQ(r.is_dichotomous(), p.is_dichotomous());
    }
}

TEST(Property, SerialDictatorshipIsParetoOptimal) {
    Rng rng(103);
    for (int t = 0; t < 150; ++t) {
        const auto p = random_profile(rng, 5, 5);
        const auto pareto = pareto_set(p);
        std::vector<AgentIndex> order(p.num_agents());
        std::iota(order.begin(), order.end(), AgentIndex{0});
        do {
            for (OutcomeIndex x : serial_dictatorship(p, DictatorOrder(p, order))) {
                ASSERT_TRUE(std::binary_search(pareto.begin(), pareto.end(), x));
            }
        } while (std::next_permutation(order.begin(), order.end()));
    }
}

TEST(Property, RsdSupportIsSelectedOutcomes) {
    Rng rng(104);
    for (int t = 0; t < 100; ++t) {
        const auto p = random_profile(rng, 4, 5);
        const Lottery l = rsd(p);
        std::vector<bool> selected(p.num_outcomes(), false);
        std::vector<AgentIndex> order(p.num_agents());
        std::iota(order.begin(), order.end(), AgentIndex{0});
        do {
            for (OutcomeIndex x : serial_dictatorship(p, DictatorOrder(p, order))) selected[x] = true;
        } while (std::next_permutation(order.begin(), order.end()));
        for (OutcomeIndex x = 0; x < p.num_outcomes(); ++x) ASSERT_EQ(sgn(l[x]) > 0, selected[x]);
        ASSERT_TRUE(rsd_is_ex_post_efficient(p, l));
    }
}

TEST(Property, SampledRsdConvergesToExact) {
    Rng rng(105);
    for (int t = 0; t < 10; ++t) {
        const auto p = random_profile(rng, 4, 5);
        const Lottery exact = rsd(p);
        const Lottery sampled = rsd(p, RsdSampled{10000, rng.below(UINT64_MAX)});
        for (OutcomeIndex x = 0; x < p.num_outcomes(); ++x) {
            if (exact[x] == 0) {
                ASSERT_EQ(sampled[x], 0);
            }
            ASSERT_LE(std::abs(sampled[x].get_d() - exact[x].get_d()), 0.05);
        }
    }
}

TEST(Property, DichotomousRsdCoversParetoSet) {
    Rng rng(106);
    for (int t = 0; t < 100; ++t) {
        const auto p = random_dichotomous_profile(1 + rng.below(5), 1 + rng.below(5), rng);
        const Lottery l = rsd(p);
        for (OutcomeIndex x : pareto_set(p)) ASSERT_GT(l[x], 0) << serialize_profile(p);
    }
}

TEST(Property, StrictAndWeakContourComparisonsAgree) {
    Rng rng(107);
    for (int t = 0; t < 300; ++t) {
        const auto p = random_profile(rng, 4, 5);
        const std::size_t m = p.num_outcomes();
        std::vector<OutcomeIndex> all(m);
        std::iota(all.begin(), all.end(), OutcomeIndex{0});
        const Lottery a = random_lottery_on(m, random_subset(all, rng), rng);
        const Lottery b = rng.coin() ? a : random_lottery_on(m, random_subset(all, rng), rng);
        const auto v = sd_compare(p, a, b);
        ASSERT_EQ(v.relation, sd_compare_weak_contours(p, a, b));
        if (v.strict_witness) {
            Rational sa = 0, sb = 0;
            for (OutcomeIndex y : strict_upper_contour(p, v.strict_witness->agent, v.strict_witness->outcome)) {
                sa += a[y];
                sb += b[y];
            }
            ASSERT_GT(sa, sb);
        }
    }
}

TEST(Property, CertificateDualityOverAllSupports) {
    Rng rng(108);
    for (int t = 0; t < 60; ++t) {
        const auto p = random_profile(rng, 4, 5);
        const auto pareto = pareto_set(p);
        for (const auto& s : all_subsets(pareto)) {
            const auto cert = support_efficient(p, s);
            const Lottery u = Lottery::uniform(p.num_outcomes(), s);
            ASSERT_TRUE(verify_certificate(p, u, cert)) << serialize_profile(p);
            if (cert.efficient()) {
                ASSERT_NO_THROW(utilitarian_certificate(p, u));
                ASSERT_TRUE(is_utilitarian_representation(p, cert.utilities()));
            } else {
                ASSERT_THROW(utilitarian_certificate(p, u), NotEfficientError);
            }
        }
    }
}

TEST(Property, SupportClosure) {
    Rng rng(109);
    for (int t = 0; t < 60; ++t) {
        const auto p = random_profile(rng, 4, 5);
        const auto pareto = pareto_set(p);
        const auto s = random_subset(pareto, rng);
        if (!support_efficient(p, s).efficient()) continue;
        for (const auto& sub : all_subsets(s)) {
            ASSERT_TRUE(support_efficient(p, sub).efficient());
            const Lottery l = random_lottery_on(p.num_outcomes(), sub, rng);
            const auto cert = is_ex_ante_efficient(p, l);
            ASSERT_TRUE(cert.efficient());
            ASSERT_TRUE(verify_certificate(p, l, cert));
        }
    }
}

TEST(Property, ConvexityCharacterization) {
    Rng rng(110);
    for (int t = 0; t < 40; ++t) {
        const auto p = random_profile(rng, 4, 5);
        const auto pareto = pareto_set(p);
        const auto d = equivalence(p);
        if (!d.coincide) {
            ASSERT_EQ(sd_compare(p, d.dominated->dominating, Lottery::uniform(p.num_outcomes(), pareto)).relation,
                      Dominance::strictly_dominates);
            continue;
        }
        std::vector<std::vector<OutcomeIndex>> efficient_supports;
        for (const auto& s : all_subsets(pareto)) {
            if (support_efficient(p, s).efficient()) efficient_supports.push_back(s);
        }
        for (int k = 0; k < 50; ++k) {
            const Lottery a = random_lottery_on(p.num_outcomes(), efficient_supports[rng.below(efficient_supports.size())], rng);
            const Lottery b = random_lottery_on(p.num_outcomes(), efficient_supports[rng.below(efficient_supports.size())], rng);
            std::vector<Rational> mix(p.num_outcomes());
            for (OutcomeIndex x = 0; x < p.num_outcomes(); ++x) mix[x] = (a[x] + b[x]) / 2;
            ASSERT_TRUE(is_ex_ante_efficient(p, Lottery(std::move(mix))).efficient());
        }
    }
}

TEST(Property, ReversalInvarianceWhenAllOutcomesOptimal) {
    Rng rng(111);
    int checked = 0;
    for (int t = 0; t < 400 && checked < 80; ++t) {
        const auto p = random_strict_profile(3 + rng.below(2), 3 + rng.below(3), rng);
        if (pareto_set(p).size() != p.num_outcomes()) continue;
        ++checked;
        ASSERT_EQ(equivalence(p).coincide, equivalence(reverse_profile(p)).coincide) << serialize_profile(p);
    }
    EXPECT_GT(checked, 20);
}

// Reorders the outcome list and appends `extra` outcomes that every agent ranks last,
// in a random order per agent. Neither change affects whether the notions coincide.
static PreferenceProfile perturb(const PreferenceProfile& p, std::size_t extra, Rng& rng) {
    std::vector<std::string> outcomes = p.outcomes();
    std::vector<std::string> tail;
    for (std::size_t k = 0; k < extra; ++k) tail.push_back("t" + std::to_string(k));
    outcomes.insert(outcomes.end(), tail.begin(), tail.end());
    rng.shuffle(outcomes);
    std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> rankings;
    for (const Agent& a : p.agents()) {
        std::vector<std::vector<std::string>> classes;
        for (const auto& cls : a.order.classes) {
            std::vector<std::string> members;
            for (OutcomeIndex x : cls) members.push_back(p.outcomes()[x]);
            classes.push_back(std::move(members));
        }
        rng.shuffle(tail);
        for (const auto& t : tail) classes.push_back({t});
        rankings.emplace_back(a.id, std::move(classes));
    }
    return PreferenceProfile::from_rankings(outcomes, rankings);
}

TEST(Property, WitnessSoundness) {
    Rng rng(112);
    std::vector<PreferenceProfile> pool;
    for (const auto& spec : {ballot_3x6(), ballot_4x4(), ballot_12x6()}) pool.push_back(ballot_to_profile(spec));
    for (int t = 0; t < 60; ++t) pool.push_back(perturb(pool[t % 3], rng.below(3), rng));
    for (int t = 0; t < 200; ++t) pool.push_back(random_strict_profile(4 + rng.below(2), 5 + rng.below(3), rng));
    int found = 0;
    for (const auto& p : pool) {
        const auto d = equivalence(p);
        if (d.coincide) continue;
        ++found;
        ASSERT_TRUE(witness_sequences_valid(p, *d.witness)) << serialize_profile(p);
        const Integer cap = repetition_bound(d.pareto.size());
        for (const auto* seq : {&d.witness->a_seq, &d.witness->b_seq}) {
            for (const auto& e : *seq) ASSERT_LE(e.second, cap);
        }
    }
    EXPECT_GE(found, 63);
}

TEST(Property, DichotomousConditionsAgree) {
    Rng rng(113);
    for (int t = 0; t < 150; ++t) {
        const auto p = random_dichotomous_profile(1 + rng.below(5), 1 + rng.below(5), rng);
        const bool coincide = equivalence(p).coincide;
        const auto view = *as_dichotomous(p);
        ASSERT_EQ(dichotomous_lambda(view).has_value(), coincide) << serialize_profile(p);
        ASSERT_EQ(is_ex_ante_efficient(p, rsd(p)).efficient(), coincide) << serialize_profile(p);
        const auto reduced = dedup_equivalent_outcomes(p).reduced;
        ASSERT_LE(Integer(static_cast<unsigned long>(pareto_set(reduced).size())), sperner_bound(p.num_agents()));
    }
}

TEST(Property, FarkasOnRandomInfeasibleSystems) {
    Rng rng(114);
    int infeasible = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t vars = 1 + rng.below(4);
        LinearSystem s(vars);
        const std::size_t rows = 1 + rng.below(6);
        for (std::size_t r = 0; r < rows; ++r) {
            RationalVector row(vars);
            for (auto& v : row) v = static_cast<long>(rng.below(7)) - 3;
            const Rational b = static_cast<long>(rng.below(7)) - 3;
            if (rng.below(3) == 0) {
                s.add_eq(std::move(row), b);
            } else {
                s.add_geq(std::move(row), b);
            }
        }
        const auto res = solve_feasibility(s);
        if (res.feasible()) {
            ASSERT_TRUE(s.satisfied_by(res.solution()));
        } else {
            ++infeasible;
            ASSERT_TRUE(certifies_infeasibility(s, res.farkas()));
        }
    }
    EXPECT_GT(infeasible, 10);
}
