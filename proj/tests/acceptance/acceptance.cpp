// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero if any
// criterion fails or overruns its time limit.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "effix/effix.hpp"

using namespace effix;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Verdict()> run;
};

// Collects failed checks; the first few are kept for the report line.
class Checks {
public:
    void expect(bool cond, const std::string& what) {
        ++total_;
        if (!cond) {
            ++failed_;
            if (failures_.size() < 3) failures_.push_back(what);
        }
    }
    Verdict verdict(const std::string& summary) const {
        std::ostringstream s;
        s << summary;
        if (failed_ > 0) {
            s << "; " << failed_ << "/" << total_ << " checks failed:";
            for (const auto& f : failures_) s << " [" << f << "]";
        }
        return {failed_ == 0, s.str()};
    }

private:
    std::uint64_t total_ = 0, failed_ = 0;
    std::vector<std::string> failures_;
};

PreferenceProfile strict_profile(const std::vector<std::string>& outcomes, const std::vector<std::string>& rankings) {
    std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> agents;
    for (std::size_t i = 0; i < rankings.size(); ++i) {
        std::vector<std::vector<std::string>> classes;
        for (char c : rankings[i]) classes.push_back({std::string(1, c)});
        agents.emplace_back(std::to_string(i + 1), classes);
    }
    return PreferenceProfile::from_rankings(outcomes, agents);
}

Lottery uniform_on(const PreferenceProfile& p, const std::vector<std::string>& labels) {
    std::vector<OutcomeIndex> xs;
    for (const auto& l : labels) xs.push_back(p.outcome_index(l));
    return Lottery::uniform(p.num_outcomes(), xs);
}

BallotSpec make_spec(const std::vector<std::pair<std::string, unsigned long>>& a_side,
                     const std::vector<std::pair<std::string, unsigned long>>& b_side,
                     std::vector<std::vector<std::string>> perms) {
    BallotSpec spec;
    for (const auto& [l, k] : a_side) spec.envelopes.push_back({l, Side::A, k});
    for (const auto& [l, k] : b_side) spec.envelopes.push_back({l, Side::B, k});
    spec.permutations = std::move(perms);
    return spec;
}

PreferenceProfile five_approvals() {
    return PreferenceProfile::from_approvals(
        {"a", "b", "c", "d"},
        {{"1", {"a", "c"}}, {"2", {"b", "d"}}, {"3", {"a", "d"}}, {"4", {"a"}}, {"5", {"b", "c"}}});
}

// Equivalence plus an independent re-check of whichever certificate came back.
bool coincide_checked(const PreferenceProfile& p, Checks& checks) {
    const auto d = equivalence(p);
    const Lottery u = Lottery::uniform(p.num_outcomes(), d.pareto);
    if (d.coincide) {
        checks.expect(is_utilitarian_representation(p, *d.utilities), "utilities certificate");
    } else {
        checks.expect(sd_compare(p, d.dominated->dominating, u).relation == Dominance::strictly_dominates,
                      "dominating lottery");
        checks.expect(witness_sequences_valid(p, *d.witness), "witness sequences");
    }
    return d.coincide;
}

// ---------------------------------------------------------------------------

Verdict example_one() {
    Checks c;
    const auto p = strict_profile({"a", "b", "c", "x", "y", "z"}, {"axbycz", "bzcxay", "cyazbx"});
    c.expect(pareto_set(p).size() == 6, "all six outcomes Pareto optimal");
    const Lottery xyz = uniform_on(p, {"x", "y", "z"});
    const Lottery abc = uniform_on(p, {"a", "b", "c"});
    const auto cert = is_ex_ante_efficient(p, xyz);
    c.expect(!cert.efficient(), "xyz dominated");
    c.expect(verify_certificate(p, xyz, cert), "xyz certificate");
    if (!cert.efficient()) c.expect(cert.dominated().dominating == abc, "abc returned as dominator");
    c.expect(sd_compare(p, abc, xyz).relation == Dominance::strictly_dominates, "abc strictly dominates xyz");
    const auto good = is_ex_ante_efficient(p, abc);
    c.expect(good.efficient() && verify_certificate(p, abc, good), "abc certified efficient");
    c.expect(!equivalence(p).coincide, "equivalence false");
    return c.verdict("6 Pareto outcomes, xyz dominated by abc, abc efficient, coincide=false");
}

Verdict example_two() {
    Checks c;
    const auto p = five_approvals();
    c.expect(pareto_set(p).size() == 4, "all four outcomes Pareto optimal");
    const auto v = sd_compare(p, uniform_on(p, {"a", "b"}), uniform_on(p, {"c", "d"}));
    c.expect(v.relation == Dominance::strictly_dominates, "ab strictly dominates cd");
    c.expect(v.strict_witness && p.agents()[v.strict_witness->agent].id == "4", "agent 4 witnesses strictness");
    const Lottery r = rsd(p);
    const Rational expected[] = {Rational(7, 15), Rational(1, 5), Rational(1, 6), Rational(1, 6)};
    for (OutcomeIndex x = 0; x < 4; ++x) c.expect(r[x] == expected[x], "RSD weight of " + p.outcomes()[x]);
    const auto cert = is_ex_ante_efficient(p, r);
    c.expect(!cert.efficient() && verify_certificate(p, r, cert), "RSD certified not efficient");
    c.expect(!equivalence(p).coincide, "equivalence false");
    return c.verdict("RSD = (7/15, 1/5, 1/6, 1/6) dominated, cd dominated by ab via agent 4, coincide=false");
}

Verdict small_profiles() {
    Checks c;
    std::uint64_t strict2 = 0, weak = 0, strict3 = 0;
    for (std::size_t m = 1; m <= 4; ++m) {
        ProfileEnumerator e(2, default_outcome_labels(m), ProfileKind::strict);
        while (auto p = e.next()) {
            ++strict2;
            c.expect(coincide_checked(*p, c), "strict n=2 m=" + std::to_string(m) + ": " + serialize_profile(*p));
        }
    }
    // Weak orders: one profile per multiset of agent rankings, since the decision does not
    // depend on agent order. Outcome sets of size <= 4 with at most 3 Pareto outcomes.
    for (std::size_t m = 1; m <= 4; ++m) {
        const auto orders = all_weak_orders(m);
        const auto labels = default_outcome_labels(m);
        for (std::size_t n = 1; n <= 3; ++n) {
            std::vector<std::size_t> pick(n, 0);
            while (true) {
                std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> agents;
                for (std::size_t i = 0; i < n; ++i) {
                    const auto& cls_of = orders[pick[i]];
                    std::vector<std::vector<std::string>> classes(*std::max_element(cls_of.begin(), cls_of.end()) + 1);
                    for (OutcomeIndex x = 0; x < m; ++x) classes[cls_of[x]].push_back(labels[x]);
                    agents.emplace_back(std::to_string(i + 1), std::move(classes));
                }
                const auto p = PreferenceProfile::from_rankings(labels, agents);
                if (pareto_set(p).size() <= 3) {
                    ++weak;
                    c.expect(coincide_checked(p, c), "weak: " + serialize_profile(p));
                }
                // next non-decreasing index tuple
                std::size_t k = n;
                while (k > 0 && pick[k - 1] + 1 == orders.size()) --k;
                if (k == 0) break;
                ++pick[k - 1];
                for (std::size_t j = k; j < n; ++j) pick[j] = pick[k - 1];
            }
        }
    }
    ProfileEnumerator e3(3, default_outcome_labels(4), ProfileKind::strict);
    while (auto p = e3.next()) {
        ++strict3;
        c.expect(coincide_checked(*p, c), "strict n=3 m=4: " + serialize_profile(*p));
    }
    std::uint64_t strict35 = 0;
    if (std::getenv("EFFIX_LONG_TESTS")) {
        ProfileEnumerator e5(3, default_outcome_labels(5), ProfileKind::strict);
        while (auto p = e5.next()) {
            ++strict35;
            c.expect(coincide_checked(*p, c), "strict n=3 m=5: " + serialize_profile(*p));
        }
    }
    std::ostringstream s;
    s << strict2 << " strict n=2 m<=4, " << weak << " weak n<=3 m<=4 |X*|<=3 (agent multisets), " << strict3
      << " strict n=3 m=4";
    if (strict35) s << ", " << strict35 << " strict n=3 m=5";
    s << "; all coincide";
    return c.verdict(s.str());
}

Verdict dichotomous_four() {
    Checks c;
    std::uint64_t count = 0;
    for (const auto& cols : antichains(4, 6)) {
        ++count;
        const auto p = profile_from_columns(4, cols);
        c.expect(coincide_checked(p, c), "antichain profile: " + serialize_profile(p));
    }
    c.expect(!equivalence(five_approvals()).coincide, "five-agent approval profile does not coincide");
    return c.verdict(std::to_string(count) + " antichain column sets for n=4 coincide; five-agent profile does not");
}

Verdict dichotomous_three_ways() {
    Checks c;
    Rng rng(5);
    std::uint64_t coincide = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto p = random_dichotomous_profile(1 + rng.below(5), 1 + rng.below(5), rng);
        const bool eq = coincide_checked(p, c);
        const auto view = *as_dichotomous(p);
        const auto lambda = dichotomous_lambda(view);
        const Lottery r = rsd(p);
        const auto cert = is_ex_ante_efficient(p, r);
        c.expect(lambda.has_value() == eq, "lambda vs equivalence: " + serialize_profile(p));
        c.expect(cert.efficient() == eq, "RSD vs equivalence: " + serialize_profile(p));
        c.expect(verify_certificate(p, r, cert), "RSD certificate");
        if (lambda) c.expect(lambda_certifies(view, *lambda), "lambda certificate");
        coincide += eq;
    }
    return c.verdict("1000 random dichotomous profiles (n,m <= 5, seed 5), " + std::to_string(coincide) +
                     " coincide; lambda, RSD and equivalence agree");
}

Verdict single_peaked() {
    Checks c;
    Rng rng(6);
    for (int t = 0; t < 1000; ++t) {
        const auto axis = default_outcome_labels(1 + rng.below(8));
        const auto p = generate_single_peaked(axis, 1 + rng.below(6), rng.below(UINT64_MAX));
        c.expect(is_single_peaked(p, axis), "generator output single-peaked");
        c.expect(coincide_checked(p, c), "single-peaked: " + serialize_profile(p));
    }
    return c.verdict("1000 single-peaked profiles (m <= 8, n <= 6, seed 6) all coincide");
}

Verdict rsd_strict() {
    Checks c;
    Rng rng(7);
    for (int t = 0; t < 1000; ++t) {
        const auto p = random_strict_profile(1 + rng.below(6), 1 + rng.below(6), rng);
        const Lottery r = rsd(p);
        const auto cert = is_ex_ante_efficient(p, r);
        c.expect(cert.efficient(), "RSD efficient: " + serialize_profile(p));
        c.expect(verify_certificate(p, r, cert), "RSD certificate");
    }
    return c.verdict("1000 random strict profiles (n,m <= 6, seed 7): exact RSD certified efficient");
}

Verdict ballots() {
    Checks c;
    const BallotSpec s3x6 = make_spec({{"A1", 1}, {"A2", 1}, {"A3", 1}}, {{"B1", 1}, {"B2", 1}, {"B3", 1}},
                                      {{"A1", "B1", "A2", "B2", "A3", "B3"},
                                       {"A2", "B3", "A3", "B1", "A1", "B2"},
                                       {"A3", "B2", "A1", "B3", "A2", "B1"}});
    const BallotSpec s4x4 = make_spec(
        {{"A1", 1}, {"A2", 1}}, {{"B1", 1}, {"B2", 1}},
        {{"A1", "B1", "A2", "B2"}, {"A2", "B1", "A1", "B2"}, {"A1", "B2", "A2", "B1"}, {"A2", "B2", "A1", "B1"}});
    const std::vector<std::vector<std::string>> heads{{"A1", "A2", "A3", "A4"}, {"A1", "A3", "A2", "A4"},
                                                      {"A1", "A4", "A3", "A2"}, {"A2", "A3", "A1", "A4"},
                                                      {"A2", "A4", "A1", "A3"}, {"A3", "A4", "A1", "A2"}};
    std::vector<std::vector<std::string>> perms;
    for (const auto& [first, second] : {std::pair{"B1", "B2"}, std::pair{"B2", "B1"}}) {
        for (const auto& h : heads) perms.push_back({h[0], h[1], first, h[2], h[3], second});
    }
    const BallotSpec s12x6 =
        make_spec({{"A1", 1}, {"A2", 1}, {"A3", 1}, {"A4", 1}}, {{"B1", 2}, {"B2", 2}}, std::move(perms));

    for (const auto* spec : {&s3x6, &s4x4, &s12x6}) {
        const std::string tag = std::to_string(spec->permutations.size()) + "x" + std::to_string(spec->envelopes.size());
        c.expect(verify_ballot(*spec).valid, tag + " verifies");
        const auto p = ballot_to_profile(*spec);
        c.expect(!coincide_checked(p, c), tag + " does not coincide");
        const auto extracted = extract_ballot_witness(p);
        c.expect(extracted && verify_ballot(*extracted).valid, tag + " extracted spec verifies");
    }
    const BallotSpec split = split_to_simple(s12x6);
    c.expect(split.simple() && split.envelopes.size() == 8, "split has 8 simple envelopes");
    c.expect(verify_ballot(split).valid, "split verifies");
    c.expect(retract_split(s12x6, split) == ballot_to_profile(s12x6), "split/retract round trip");
    return c.verdict("3x6, 4x4, 12x6 specs verify, do not coincide, yield valid extracted specs; split round-trips");
}

Verdict integral_and_farkas() {
    Checks c;
    Rng rng(9);
    int solvable = 0, infeasible = 0;
    std::uint64_t draws = 0;
    while ((solvable < 200 || infeasible < 200) && draws < 200000) {
        ++draws;
        const std::size_t cols = 1 + rng.below(5), rows = 1 + rng.below(5);
        RationalMatrix a(rows, RationalVector(cols));
        for (auto& row : a) {
            for (auto& v : row) v = static_cast<long>(rng.below(7)) - 3;
        }
        if (solvable < 200) {
            // nontrivial solutions of A x <= 0 are those of (-A) x >= 0 with a strict row
            RationalMatrix neg = a;
            for (auto& row : neg) {
                for (auto& v : row) v = -v;
            }
            std::vector<std::size_t> free_vars(cols);
            std::iota(free_vars.begin(), free_vars.end(), std::size_t{0});
            if (const auto h = nontrivial_homogeneous(neg, free_vars, {}, false)) {
                ++solvable;
                Integer bound = hadamard_bound(detail::max_abs_entry(a), rows, cols);
                for (auto route : {IntegralizeRoute::automatic, IntegralizeRoute::vertex}) {
                    const auto w = integralize(a, h->alpha, route);
                    bool strict = false, ok = true;
                    for (const auto& row : a) {
                        Integer s = 0;
                        for (std::size_t j = 0; j < cols; ++j) s += row[j].get_num() * w.x[j];
                        ok = ok && s <= 0;
                        strict = strict || s < 0;
                    }
                    Integer top = 0;
                    for (const auto& z : w.x) top = std::max(top, Integer(abs(z)));
                    c.expect(ok && strict, "integral witness satisfies A x <= 0 with a strict row");
                    c.expect(top <= bound, "integral witness within the Hadamard bound");
                }
            }
        }
        if (infeasible < 200) {
            LinearSystem s(cols);
            for (const auto& row : a) {
                const Rational rhs = static_cast<long>(rng.below(7)) - 3;
                if (rng.below(3) == 0) {
                    s.add_eq(row, rhs);
                } else {
                    s.add_geq(row, rhs);
                }
            }
            const auto res = solve_feasibility(s);
            if (res.feasible()) {
                c.expect(s.satisfied_by(res.solution()), "feasible point satisfies system");
            } else {
                ++infeasible;
                c.expect(certifies_infeasibility(s, res.farkas()), "Farkas certificate");
            }
        }
    }
    c.expect(solvable >= 200 && infeasible >= 200, "enough random systems drawn");
    return c.verdict(std::to_string(solvable) + " solvable homogeneous systems integralized by both routes, " +
                     std::to_string(infeasible) + " infeasible systems with verified Farkas certificates (seed 9)");
}

Verdict oracle_agreement() {
    Checks c;
    constexpr std::size_t max_denominator = 4;
    std::uint64_t profiles = 0, comparisons = 0, dominated = 0;
    for (std::size_t m = 1; m <= 4; ++m) {
        const auto grid = grid_lotteries({max_denominator, m});
        for (std::size_t n = 1; n <= 3; ++n) {
            ProfileEnumerator e(n, default_outcome_labels(m), ProfileKind::strict);
            while (auto p = e.next()) {
                ++profiles;
                // the verdict depends only on the support, so each support is decided once
                std::map<std::vector<OutcomeIndex>, EfficiencyCertificate> by_support;
                for (const Lottery& l : grid) {
                    auto it = by_support.find(l.support());
                    if (it == by_support.end()) it = by_support.emplace(l.support(), support_efficient(*p, l.support())).first;
                    const EfficiencyCertificate& cert = it->second;
                    if (!cert.efficient()) {
                        ++dominated;
                        const Lottery q = shift_lottery(l, cert.dominated().alpha);
                        c.expect(sd_compare(*p, q, l).relation == Dominance::strictly_dominates,
                                 "LP dominator passes sd_compare");
                    }
                    ++comparisons;
                    c.expect(oracle_is_efficient(*p, l, grid) == cert.efficient(),
                             "oracle agrees on " + serialize_profile(*p));
                }
            }
        }
    }
    std::ostringstream s;
    s << profiles << " strict profiles (n <= 3, m <= 4), " << comparisons << " grid lotteries at d <= " << max_denominator
      << ", " << dominated << " dominated; oracle and LP agree";
    return c.verdict(s.str());
}

}  // namespace

int main(int argc, char** argv) {
    // optional arguments select criteria by number
    std::vector<int> only;
    for (int k = 1; k < argc; ++k) only.push_back(std::atoi(argv[k]));
    const std::vector<Criterion> criteria{
        {1, "interlaced-cycles regression", 1.0, example_one},
        {2, "five-approval regression", 1.0, example_two},
        {3, "small-profile sweeps", 600.0, small_profiles},
        {4, "dichotomous four-agent sweep", 600.0, dichotomous_four},
        {5, "dichotomous three-way consistency", 300.0, dichotomous_three_ways},
        {6, "single-peaked profiles", 120.0, single_peaked},
        {7, "RSD under strict preferences", 300.0, rsd_strict},
        {8, "ballot-counting profiles", 60.0, ballots},
        {9, "integral solutions and Farkas certificates", 120.0, integral_and_farkas},
        {10, "grid oracle agreement", 900.0, oracle_agreement},
    };
    int failures = 0;
    for (const auto& cr : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), cr.id) == only.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = cr.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < cr.limit_seconds;
        const bool pass = v.ok && in_time;
        failures += !pass;
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << "AC" << cr.id << " " << cr.name << ": " << v.detail << " ("
                  << std::fixed << std::setprecision(2) << secs << " s, limit " << std::setprecision(0) << cr.limit_seconds
                  << " s" << (in_time ? "" : ", TIME LIMIT EXCEEDED") << ")" << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
