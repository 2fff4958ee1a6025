#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "treespread/family.hpp"
#include "treespread/numbers.hpp"
#include "treespread/sampling.hpp"

namespace treespread {

struct Concentration {
    Integer c;                    // c_i = max |a[S]| over i-subsets S
    Rational d;                   // c_i / |a|
    std::optional<EdgeSet> argmax;  // lexicographically least maximizer
};

// Concentration measure of the family at level i. The search runs over
// i-subsets of members only: any S with a[S] nonempty lies inside a member.
inline Concentration concentration(const SetFamily& a, int i, long cap = default_subset_cap) {
    if (a.empty()) throw undefined_ratio("concentration of an empty family");
    if (i < 0) throw invalid_input("concentration level must be >= 0");
    if (i == 0) return {Integer(a.size()), Rational(1), EdgeSet{}};
    if (i > a.max_member_size()) return {Integer(0), Rational(0), std::nullopt};
    bool exhaustive = true;
    auto counts = restriction_counts(a, i, cap, &exhaustive);
    if (!exhaustive) throw resource_limit("concentration search cap exceeded");
    long best = -1;
    std::optional<EdgeSet> best_set;
    std::vector<EdgeSet> keys;
    keys.reserve(counts.size());
    for (const auto& [s, cnt] : counts)
        if (s.count() == i) keys.push_back(s);
    std::sort(keys.begin(), keys.end(), lex_less);
    for (const EdgeSet& s : keys) {
        const long cnt = counts.at(s);
        if (cnt > best) {
            best = cnt;
            best_set = s;
        }
    }
    if (best < 0) return {Integer(0), Rational(0), std::nullopt};
    Rational d{Integer(best), Integer(a.size())};
    d.canonicalize();
    return {Integer(best), d, best_set};
}

struct SpreadReport {
    Rational r;
    std::optional<int> t;
    bool holds = true;
    EdgeSet worst_set;       // S achieving the worst ratio (within its quotient)
    EdgeSet worst_quotient;  // the T whose quotient contains the worst S (empty in plain mode)
    Rational worst_ratio;    // max |a(T)[S]| * r^|S| / |a(T)|
    bool exhaustive = true;
    long pairs_checked = 0;
};

// r-spread check: |a[S]| <= r^(-|S|) |a| for all S with a[S] nonempty.
// With t given, the same check runs on every quotient a(T) for T a subset of
// a member with |T| <= t (T = emptyset included, so the plain check is the
// special case). Equivalently: for all T subset U subset member with |T| <= t,
//   |a[U]| * r^(|U|-|T|) <= |a[T]|,
// decided in exact rational arithmetic.
inline SpreadReport spreadness_check(const SetFamily& a, const Rational& r,
                                     std::optional<int> t = std::nullopt,
                                     long cap = default_subset_cap) {
    if (a.empty()) throw invalid_input("spreadness check needs a nonempty family");
    if (r <= 0) throw invalid_input("spread parameter must be positive");
    SpreadReport report;
    report.r = r;
    report.t = t;
    report.worst_ratio = Rational(0);
    auto counts = restriction_counts(a, -1, cap, &report.exhaustive);

    std::vector<EdgeSet> keys;
    keys.reserve(counts.size());
    for (const auto& [s, cnt] : counts) keys.push_back(s);
    std::sort(keys.begin(), keys.end(), lex_less);

    const int t_cap = t.value_or(0);
    for (const EdgeSet& u : keys) {
        const long cnt_u = counts.at(u);
        const std::vector<int> ranks = u.ranks();
        const int k = static_cast<int>(ranks.size());
        // enumerate T subset of U with |T| <= t_cap (plain mode: T = empty only)
        for (std::uint32_t pick = 0; pick < (std::uint32_t{1} << k); ++pick) {
            const int tsize = std::popcount(pick);
            if (tsize > t_cap) continue;
            const int ssize = k - tsize;  // S = U \ T inside the quotient at T
            if (ssize == 0) continue;     // ratio is 1 by definition, never a violator
            EdgeSet tset;
            for (int b = 0; b < k; ++b)
                if ((pick >> b) & 1u) tset.insert(ranks[static_cast<std::size_t>(b)]);
            const auto it = counts.find(tset);
            if (it == counts.end()) {  // truncated map
                report.exhaustive = false;
                continue;
            }
            const long cnt_t = it->second;
            ++report.pairs_checked;
            Rational ratio = Rational(Integer(cnt_u), Integer(cnt_t)) *
                             rpow(r, static_cast<unsigned long>(ssize));
            ratio.canonicalize();
            if (ratio > report.worst_ratio) {
                report.worst_ratio = ratio;
                report.worst_set = u - tset;
                report.worst_quotient = tset;
            }
        }
    }
    report.holds = report.worst_ratio <= 1;
    return report;
}

struct BinomBound {
    Integer exact;   // C(n, k)
    Rational bound;  // (e_lower * n / k)^k, a certified lower bound on (en/k)^k
    bool ok;         // exact <= bound (so the true inequality holds a fortiori)
};

// C(n,k) <= (en/k)^k, decided against a rational lower bound on e so a pass
// can never be an artifact of rounding.
inline BinomBound binom_upper_bound(unsigned long n, unsigned long k) {
    if (k > n) throw invalid_input("binomial bound needs 0 <= k <= n");
    const Integer exact = binomial(n, k);
    if (k == 0) return {exact, Rational(1), exact <= 1};
    Rational base = e_lower() * Rational(Integer(n), Integer(k));
    base.canonicalize();
    const Rational bound = rpow(base, k);
    return {exact, bound, Rational(exact) <= bound};
}

struct SpreadLemmaReport {
    Rational empirical;         // hit fraction over the trials, exact
    double lower_bound_approx;  // max(0, 1 - k (2 / log2(r delta))^beta)
    double sigma;               // conservative binomial std error 1/(2 sqrt trials)
    long trials = 0;
    bool spread_ok = false;     // r-spreadness of a, checked exactly
    bool pass = true;           // empirical >= bound - 3 sigma, when asserted
};

// Monte Carlo check of the spread lemma: W is a (beta*delta)-random subset of
// the universe (each rank included independently, with an exact-rational coin)
// and we measure how often some member lands inside W. The analytic lower
// bound only binds when the family is r-spread; the report asserts nothing
// otherwise.
inline SpreadLemmaReport spread_lemma_empirical(const SetFamily& a, int k, const Rational& r,
                                                long beta, const Rational& delta, long trials,
                                                std::uint64_t seed,
                                                long cap = default_subset_cap) {
    if (a.empty()) throw invalid_input("spread lemma needs a nonempty family");
    if (beta < 1 || delta <= 0) throw invalid_input("beta >= 1 and delta > 0 required");
    if (trials < 1) throw invalid_input("need at least one trial");
    if (a.max_member_size() > k) throw invalid_input("family has a member larger than k");
    Rational p = Rational(beta) * delta;
    p.canonicalize();
    if (p > 1) throw invalid_input("beta*delta exceeds 1");

    SpreadLemmaReport report;
    report.trials = trials;
    report.spread_ok = spreadness_check(a, r, std::nullopt, cap).holds;

    const Integer& num = p.get_num();
    const Integer& den = p.get_den();
    const std::uint64_t den64 = den.get_ui();
    const std::uint64_t num64 = num.get_ui();
    std::mt19937_64 rng(seed);
    const int universe_size = a.universe().size;
    long hits = 0;
    for (long trial = 0; trial < trials; ++trial) {
        EdgeSet w;
        for (int rank = 1; rank <= universe_size; ++rank)
            if (detail::uniform_below(rng, den64) < num64) w.insert(rank);
        for (const EdgeSet& m : a.members())
            if (m.subset_of(w)) {
                ++hits;
                break;
            }
    }
    report.empirical = Rational(Integer(hits), Integer(trials));
    report.empirical.canonicalize();

    const double rd = mpq_get_d(r.get_mpq_t()) * mpq_get_d(delta.get_mpq_t());
    double bound = 0.0;
    if (rd > 1.0) {
        const double l = std::log2(rd);
        bound = 1.0 - static_cast<double>(k) * std::pow(2.0 / l, static_cast<double>(beta));
    }
    report.lower_bound_approx = std::max(0.0, bound);
    report.sigma = 0.5 / std::sqrt(static_cast<double>(trials));
    if (report.spread_ok && report.lower_bound_approx > 0.0)
        report.pass = mpq_get_d(report.empirical.get_mpq_t()) >=
                      report.lower_bound_approx - 3.0 * report.sigma;
    return report;
}

}  // namespace treespread
