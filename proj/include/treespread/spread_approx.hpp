#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "treespread/family.hpp"
#include "treespread/numbers.hpp"
#include "treespread/spreadness.hpp"

namespace treespread {

// Positive weight w(s) on set sizes, used to score restrictions by
// |a[S]| * w(|S|). Comparisons are exact even when the weight itself is
// irrational (concentration-power rule): with delta = p/q the q-th power of
// the score, cnt^q * d_s^(-2p), is rational and order-isomorphic to it.
class WeightRule {
public:
    // w(s) = ratio^s
    static WeightRule geometric(Rational ratio) {
        if (ratio <= 0) throw invalid_input("geometric weight needs a positive ratio");
        WeightRule w;
        w.geometric_ = true;
        w.ratio_ = std::move(ratio);
        return w;
    }

    static WeightRule uniform() { return geometric(Rational(1)); }

    // w(s) = d_s(context)^(-2*delta)
    static WeightRule concentration_power(const SetFamily& context, Rational delta,
                                          long cap = default_subset_cap) {
        if (delta <= 0) throw invalid_input("concentration-power weight needs delta > 0");
        delta.canonicalize();
        WeightRule w;
        w.geometric_ = false;
        w.two_p_ = 2 * delta.get_num().get_ui();
        w.q_ = delta.get_den().get_ui();
        const int max_size = context.max_member_size();
        w.d_.reserve(static_cast<std::size_t>(max_size) + 1);
        for (int s = 0; s <= max_size; ++s) {
            Concentration c = concentration(context, s, cap);
            if (c.d <= 0) break;  // sizes past the context's support carry no weight
            w.d_.push_back(c.d);
        }
        return w;
    }

    bool is_geometric() const { return geometric_; }

    // sign of score(cnt1, s1) - score(cnt2, s2)
    int compare(const Integer& cnt1, int s1, const Integer& cnt2, int s2) const {
        const Rational a = comparable(cnt1, s1);
        const Rational b = comparable(cnt2, s2);
        return cmp(a, b);
    }

    // Geometric rule: the exact score cnt * ratio^s. Concentration rule: the
    // exact q-th power of the score (a strictly monotone surrogate).
    Rational score(const Integer& cnt, int s) const { return comparable(cnt, s); }
    bool score_is_surrogate() const { return !geometric_ && q_ != 1; }

    int max_weighted_size() const {
        return geometric_ ? -1 : static_cast<int>(d_.size()) - 1;
    }

private:
    Rational comparable(const Integer& cnt, int s) const {
        if (geometric_) return Rational(cnt) * rpow(ratio_, static_cast<unsigned long>(s));
        if (s >= static_cast<int>(d_.size()))
            throw invalid_input("weight undefined at this set size");
        Rational num;
        mpz_pow_ui(mpq_numref(num.get_mpq_t()), cnt.get_mpz_t(), q_);
        Rational r = num / rpow(d_[static_cast<std::size_t>(s)], two_p_);
        r.canonicalize();
        return r;
    }

    bool geometric_ = true;
    Rational ratio_ = 1;
    std::vector<Rational> d_;
    unsigned long two_p_ = 0;
    unsigned long q_ = 1;
};

struct WeightedArgmax {
    EdgeSet set;     // maximizer; ties broken by smaller size, then rank-lex order
    Rational score;  // WeightRule::score of the winner
    long restriction_size = 0;  // |a[set]|
};

// Maximize |a[S]| * w(|S|) over all S that are subsets of members (plus the
// empty set), sizes capped at size_cap when size_cap >= 0.
inline WeightedArgmax argmax_weighted_restriction(const SetFamily& a, const WeightRule& w,
                                                  int size_cap = -1,
                                                  long cap = default_subset_cap) {
    if (a.empty()) throw invalid_input("argmax over an empty family");
    int effective_cap = size_cap;
    if (const int wm = w.max_weighted_size(); wm >= 0)
        effective_cap = effective_cap < 0 ? wm : std::min(effective_cap, wm);
    bool exhaustive = true;
    auto counts = restriction_counts(a, effective_cap, cap, &exhaustive);
    if (!exhaustive) throw resource_limit("argmax candidate cap exceeded");

    std::vector<EdgeSet> keys;
    keys.reserve(counts.size());
    for (const auto& [s, cnt] : counts) keys.push_back(s);
    std::sort(keys.begin(), keys.end(), [](const EdgeSet& x, const EdgeSet& y) {
        const int cx = x.count(), cy = y.count();
        if (cx != cy) return cx < cy;
        return lex_less(x, y);
    });

    WeightedArgmax best;
    bool first = true;
    for (const EdgeSet& s : keys) {
        const Integer cnt(counts.at(s));
        if (first || w.compare(cnt, s.count(), Integer(best.restriction_size),
                               best.set.count()) > 0) {
            best.set = s;
            best.score = w.score(cnt, s.count());
            best.restriction_size = counts.at(s);
            first = false;
        }
    }
    return best;
}

struct SpreadRestriction {
    EdgeSet set;                    // S maximizing |a[S]| * r'^|S|
    SpreadReport quotient_report;   // r'-spread check of a(S); holds unconditionally
    bool size_bound_ok = false;     // |a| r^|S| <= |u| r'^|S|, exact form of
                                    // |S| <= (log|u| - log|a|) / (log r - log r')
    double size_bound_approx = 0.0; // the log-form right-hand side
};

// Constructive spread restriction: under the geometric-maximality choice the
// quotient is r'-spread, and when u is r-spread the size bound follows; both
// are reported from exact arithmetic.
inline SpreadRestriction find_spread_restriction(const SetFamily& a, const SetFamily& u,
                                                 const Rational& r, const Rational& r_prime,
                                                 long cap = default_subset_cap) {
    if (!(r_prime < r)) throw invalid_input("need r' < r");
    if (a.empty()) throw invalid_input("spread restriction of an empty family");
    const WeightedArgmax arg =
        argmax_weighted_restriction(a, WeightRule::geometric(r_prime), -1, cap);
    SpreadRestriction out;
    out.set = arg.set;
    out.quotient_report = spreadness_check(quotient(a, arg.set), r_prime, std::nullopt, cap);
    const unsigned long s_size = static_cast<unsigned long>(arg.set.count());
    out.size_bound_ok =
        Rational(Integer(a.size())) * rpow(r, s_size) <= Rational(Integer(u.size())) * rpow(r_prime, s_size);
    const double lr = std::log(mpq_get_d(r.get_mpq_t()));
    const double lrp = std::log(mpq_get_d(r_prime.get_mpq_t()));
    out.size_bound_approx =
        (std::log(static_cast<double>(u.size())) - std::log(static_cast<double>(a.size()))) /
        (lr - lrp);
    return out;
}

struct DensityBoost {
    EdgeSet best;                 // t'-subset maximizing |a[X]|
    int target_size = 0;          // t' = t - ceil(m^(1-delta)), m = member size
    Rational ratio;               // |a[best]| / |a|
    double threshold_approx = 0.0;  // e^(-eps t)
    bool meets_threshold_approx = false;  // reported, never asserted
    Integer incidence;            // sum over members A of C(|A ∩ best|, t')
};

// 12*delta*(1 - ln delta) < eps, the admissibility constraint on delta.
inline bool density_boost_delta_ok(const Rational& eps, const Rational& delta) {
    const double d = mpq_get_d(delta.get_mpq_t());
    return 12.0 * d * (1.0 - std::log(d)) < mpq_get_d(eps.get_mpq_t());
}

// r > max(20 eps t, sqrt(n)), decided exactly (r^2 > n and r > 20 eps t).
inline bool hypothesis_r_vs_eps_t(const Rational& r, const Rational& eps, long t, long n) {
    return rpow(r, 2) > Rational(Integer(n)) && r > Rational(20) * eps * Rational(Integer(t));
}

// r > n^0.99, decided exactly as r^100 > n^99.
inline bool hypothesis_r_poly(const Rational& r, long n) {
    return rpow(r, 100) > Rational(ipow(static_cast<unsigned long>(n), 99));
}

// Exhaustive search for a t'-subset of members contained in the largest
// fraction of the family. The e^(-eps t) comparison is informational: the
// guarantee behind it is asymptotic.
inline DensityBoost density_boost_search(const SetFamily& a, const SetFamily& u, long t,
                                         const Rational& eps, const Rational& delta,
                                         long cap = default_subset_cap) {
    (void)u;  // context only; the search needs nothing beyond a itself
    if (a.empty()) throw invalid_input("density boost over an empty family");
    if (t < 1) throw invalid_input("density boost needs t >= 1");
    if (!(delta > 0) || !(delta < Rational(1, 6)))
        throw invalid_input("delta must lie in (0, 1/6)");
    const auto msize = a.uniform_size();
    if (!msize) throw invalid_input("density boost needs a uniform family");
    // ceil(m^(1-delta)) with delta = p/q: the q-th root of m^(q-p), rounded up
    Rational one_minus = Rational(1) - delta;
    one_minus.canonicalize();
    const unsigned long q = one_minus.get_den().get_ui();
    const unsigned long p = one_minus.get_num().get_ui();
    const Integer gap = ceil_kth_root(ipow(static_cast<unsigned long>(*msize), p), q);
    const Integer t_prime_z = Integer(static_cast<long>(t)) - gap;
    if (t_prime_z < 0) throw invalid_input("target size t' is negative");
    const int t_prime = static_cast<int>(t_prime_z.get_si());

    bool exhaustive = true;
    auto counts = restriction_counts(a, t_prime, cap, &exhaustive);
    if (!exhaustive) throw resource_limit("density boost candidate cap exceeded");
    std::vector<EdgeSet> keys;
    for (const auto& [s, cnt] : counts)
        if (s.count() == t_prime) keys.push_back(s);
    std::sort(keys.begin(), keys.end(), lex_less);

    if (keys.empty()) throw invalid_input("members are smaller than the target size t'");
    DensityBoost out;
    out.target_size = t_prime;
    long best = -1;
    for (const EdgeSet& s : keys) {
        const long cnt = counts.at(s);
        if (cnt > best) {
            best = cnt;
            out.best = s;
        }
    }
    out.ratio = Rational(Integer(best), Integer(a.size()));
    out.ratio.canonicalize();
    out.threshold_approx = std::exp(-mpq_get_d(eps.get_mpq_t()) * static_cast<double>(t));
    out.meets_threshold_approx = mpq_get_d(out.ratio.get_mpq_t()) >= out.threshold_approx;
    out.incidence = 0;
    for (const EdgeSet& m : a.members())
        out.incidence += binomial(static_cast<unsigned long>(m.intersection_size(out.best)),
                                  static_cast<unsigned long>(t_prime));
    return out;
}

struct PeelStep {
    EdgeSet core;
    long family_before = 0;
    long family_after = 0;
    SpreadReport quotient_report;  // (r/2)-spread check of the peeled quotient
    bool size_bound_ok = false;
    bool core_size_ok = false;  // |Y_i| <= (1 + eps) t
};

struct PeelResult {
    std::vector<EdgeSet> cores;
    SetFamily residual;
    std::vector<PeelStep> steps;
    Rational stop_threshold;
    bool all_quotients_spread = true;
    bool all_size_bounds_ok = true;
    bool all_core_sizes_ok = true;         // asymptotic claim: reported, not asserted
    bool cores_t_intersecting = true;      // asymptotic claim: reported, not asserted
};

// Iterative peeling: Y_i maximizes |A_i[S]| (r/2)^|S|, members containing Y_i
// leave the family, and the loop stops once |A_i| <= stop_threshold
// (default 0.001 c_t(u)). Every original member lands in exactly one removed
// batch or the residual.
inline PeelResult spread_approximation(const SetFamily& a, const SetFamily& u, int t,
                                       const Rational& r, const Rational& eps,
                                       std::optional<Rational> stop_threshold = std::nullopt,
                                       long cap = default_subset_cap) {
    if (!(u.universe() == a.universe())) throw invalid_input("families on different universes");
    Rational stop = stop_threshold ? *stop_threshold
                                   : Rational(concentration(u, t, cap).c) / 1000;
    stop.canonicalize();
    if (stop < 0) throw invalid_input("stop threshold must be >= 0");

    PeelResult result{.cores = {}, .residual = a, .steps = {}, .stop_threshold = stop};
    Rational one_plus_eps_t = (Rational(1) + eps) * Rational(t);
    one_plus_eps_t.canonicalize();

    SetFamily current = a;
    while (current.size() > 0 && Rational(Integer(current.size())) > stop) {
        SpreadRestriction found = find_spread_restriction(current, u, r, r / 2, cap);
        PeelStep step;
        step.core = found.set;
        step.family_before = current.size();
        step.quotient_report = found.quotient_report;
        step.size_bound_ok = found.size_bound_ok;
        step.core_size_ok = Rational(found.set.count()) <= one_plus_eps_t;

        std::vector<EdgeSet> kept;
        for (const EdgeSet& m : current.members())
            if (!found.set.subset_of(m)) kept.push_back(m);
        current = SetFamily(current.universe(), std::move(kept));
        step.family_after = current.size();

        result.all_quotients_spread &= step.quotient_report.holds;
        result.all_size_bounds_ok &= step.size_bound_ok;
        result.all_core_sizes_ok &= step.core_size_ok;
        result.cores.push_back(found.set);
        result.steps.push_back(std::move(step));
    }
    result.residual = current;
    if (!result.cores.empty()) {
        SetFamily core_family(a.universe(), result.cores);
        result.cores_t_intersecting = is_t_intersecting(core_family, t).ok;
    }
    return result;
}

struct StructureBound {
    std::optional<EdgeSet> witness;  // lex-least t-subset T with |a[S]| <= eps |a[T]|
    Rational best_ratio;             // min over T of |a[S]| / |a[T]|
    Integer restricted_size;         // |a[S]|
};

// Empirical verifier for the structure theorem: search t-subsets of members
// of a for a T with |a[S]| <= eps * |a[T]|. The caller asserts that s is
// t-intersecting; triviality (a common t-subset across a nonempty s) is
// checked here and rejected, since the theorem excludes it.
inline StructureBound verify_structure_bound(const SetFamily& a, const SetFamily& s, int t,
                                             const Rational& eps,
                                             long cap = default_subset_cap) {
    if (!s.empty() && s.member_intersection().count() >= t)
        throw precondition_violation("family s is trivial (common t-subset)");
    if (a.empty()) throw invalid_input("structure bound over an empty family");

    const Integer restricted(restrict_over(a, s).size());
    bool exhaustive = true;
    auto counts = restriction_counts(a, t, cap, &exhaustive);
    if (!exhaustive) throw resource_limit("structure bound candidate cap exceeded");
    std::vector<EdgeSet> keys;
    for (const auto& [x, cnt] : counts)
        if (x.count() == t) keys.push_back(x);
    if (keys.empty()) throw undefined_ratio("family a has no t-subsets to restrict to");
    std::sort(keys.begin(), keys.end(), lex_less);

    StructureBound out;
    out.restricted_size = restricted;
    bool first = true;
    for (const EdgeSet& tset : keys) {
        const Integer cnt(counts.at(tset));
        Rational ratio = Rational(restricted) / Rational(cnt);
        ratio.canonicalize();
        if (first || ratio < out.best_ratio) {
            out.best_ratio = ratio;
            first = false;
        }
        if (!out.witness && Rational(restricted) <= eps * Rational(cnt)) out.witness = tset;
    }
    return out;
}

}  // namespace treespread
