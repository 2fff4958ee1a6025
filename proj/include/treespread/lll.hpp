#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "treespread/counting.hpp"
#include "treespread/errors.hpp"
#include "treespread/forest.hpp"
#include "treespread/numbers.hpp"
#include "treespread/prufer.hpp"
#include "treespread/sampling.hpp"

namespace treespread {

// Base forest F on [n] plus forest-events H_i: under a uniform draw T from
// the trees containing F, event i is "T contains H_i".
struct EventSystem {
    Forest base;
    std::vector<Forest> events;

    EventSystem(Forest base_forest, std::vector<Forest> event_forests)
        : base(std::move(base_forest)), events(std::move(event_forests)) {
        for (const Forest& h : events)
            if (h.n() != base.n()) throw invalid_input("event forest on wrong vertex set");
    }

    int n() const { return base.n(); }
    int size() const { return static_cast<int>(events.size()); }

    void check_index(int i) const {
        if (i < 0 || i >= size()) throw invalid_input("event index out of range");
    }
};

// P(A_i) = |T_n[base ∪ H_i]| / |T_n[base]|; zero when the union is cyclic.
inline Rational event_probability(const EventSystem& sys, int i) {
    sys.check_index(i);
    const auto merged = Forest::try_union(sys.base, sys.events[static_cast<std::size_t>(i)]);
    if (!merged) return Rational(0);
    Rational p(count_containing(*merged), count_containing(sys.base));
    p.canonicalize();
    return p;
}

// True when no component of `base` contains both a vertex of h1 (an endpoint
// of some h1-edge) and a vertex of h2.
inline bool are_f_disjoint(const Forest& base, const Forest& h1, const Forest& h2) {
    if (h1.n() != base.n() || h2.n() != base.n()) throw invalid_input("forests on different vertex sets");
    UnionFind uf = base.union_find();
    std::vector<bool> touched(static_cast<std::size_t>(base.n()) + 1, false);
    for (const Edge& e : h1.edges()) {
        touched[static_cast<std::size_t>(uf.find(e.u))] = true;
        touched[static_cast<std::size_t>(uf.find(e.v))] = true;
    }
    for (const Edge& e : h2.edges())
        if (touched[static_cast<std::size_t>(uf.find(e.u))] ||
            touched[static_cast<std::size_t>(uf.find(e.v))])
            return false;
    return true;
}

// Adjacency over event indices: i ~ j iff H_i and H_j are NOT F-disjoint.
// Non-neighbors are exactly the pairwise F-disjoint partners, which is what
// both the lopsided-local-lemma conditioning and the degree count in the
// avoiding-tree bound need.
struct DependencyGraph {
    int k = 0;
    std::vector<std::vector<bool>> adj;

    bool edge(int i, int j) const { return adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    int degree(int i) const {
        int d = 0;
        for (int j = 0; j < k; ++j)
            if (j != i && edge(i, j)) ++d;
        return d;
    }
};

inline DependencyGraph build_dependency_graph(const EventSystem& sys) {
    const int k = sys.size();
    DependencyGraph g{k, std::vector<std::vector<bool>>(static_cast<std::size_t>(k),
                                                        std::vector<bool>(static_cast<std::size_t>(k), false))};
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const bool dep = !are_f_disjoint(sys.base, sys.events[static_cast<std::size_t>(i)],
                                             sys.events[static_cast<std::size_t>(j)]);
            g.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = dep;
            g.adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = dep;
        }
    return g;
}

struct IndependenceCheck {
    Rational lhs;  // P(A_i ∧ A_j), via the union forest count
    Rational rhs;  // P(A_i) P(A_j)
    bool equal = false;
};

// For F-disjoint events the two probabilities factor exactly.
inline IndependenceCheck verify_independence(const EventSystem& sys, int i, int j) {
    sys.check_index(i);
    sys.check_index(j);
    const Forest& hi = sys.events[static_cast<std::size_t>(i)];
    const Forest& hj = sys.events[static_cast<std::size_t>(j)];
    if (!are_f_disjoint(sys.base, hi, hj))
        throw precondition_violation("events are not F-disjoint");
    IndependenceCheck out;
    out.rhs = event_probability(sys, i) * event_probability(sys, j);
    out.rhs.canonicalize();
    const auto hij = Forest::try_union(hi, hj);
    const auto merged = hij ? Forest::try_union(sys.base, *hij) : std::nullopt;
    if (merged) {
        out.lhs = Rational(count_containing(*merged), count_containing(sys.base));
        out.lhs.canonicalize();
    } else {
        out.lhs = Rational(0);
    }
    out.equal = out.lhs == out.rhs;
    return out;
}

enum class ProbMethod { exact, monte_carlo };

struct NegativeDependencyCheck {
    Rational conditional;    // P(A_i | ∧_{j in cond} ¬A_j)
    Rational unconditional;  // P(A_i)
    bool ok = false;         // conditional <= unconditional
    bool equal = false;      // exact mode reports equality for F-disjoint cond sets
    long trials = 0;         // monte carlo only
};

// Conditioning on the complements of F-disjoint partners leaves P(A_i)
// unchanged. Exact mode enumerates the trees containing the base; Monte Carlo
// mode estimates from seeded uniform samples.
inline NegativeDependencyCheck verify_negative_dependency(
    const EventSystem& sys, int i, const std::vector<int>& cond_set,
    ProbMethod method = ProbMethod::exact, long trials = 100000, std::uint64_t seed = 1,
    int n_cap = default_enumeration_cap) {
    sys.check_index(i);
    const Forest& hi = sys.events[static_cast<std::size_t>(i)];
    for (int j : cond_set) {
        sys.check_index(j);
        if (j == i) throw precondition_violation("conditioning set contains the event itself");
        if (!are_f_disjoint(sys.base, hi, sys.events[static_cast<std::size_t>(j)]))
            throw precondition_violation("conditioning set must be F-disjoint from the event");
    }

    const int n = sys.n();
    const EdgeSet mask_i = hi.edge_set();
    std::vector<EdgeSet> cond_masks;
    cond_masks.reserve(cond_set.size());
    for (int j : cond_set) cond_masks.push_back(sys.events[static_cast<std::size_t>(j)].edge_set());

    NegativeDependencyCheck out;
    out.unconditional = event_probability(sys, i);

    Integer hits_cond = 0, hits_both = 0, total = 0;
    auto tally = [&](const EdgeSet& tree_mask) {
        ++total;
        for (const EdgeSet& hm : cond_masks)
            if (hm.subset_of(tree_mask)) return;
        ++hits_cond;
        if (mask_i.subset_of(tree_mask)) ++hits_both;
    };

    if (method == ProbMethod::exact) {
        TreeEnumerator stream(n, sys.base, {}, n_cap);
        stream.drain([&](const std::vector<Edge>&, const EdgeSet& mask) { tally(mask); });
    } else {
        if (trials < 1) throw invalid_input("need at least one trial");
        out.trials = trials;
        TreeSampler sampler(sys.base, seed);
        for (long s = 0; s < trials; ++s) tally(sampler.draw().edge_set());
    }
    if (hits_cond == 0) throw undefined_conditional("conditioning event has probability zero");
    out.conditional = Rational(hits_both, hits_cond);
    out.conditional.canonicalize();
    out.ok = out.conditional <= out.unconditional;
    out.equal = out.conditional == out.unconditional;
    return out;
}

struct LllCertificate {
    std::vector<Rational> x;
    std::vector<bool> condition_ok;  // P(A_i) <= x_i prod_{j ~ i} (1 - x_j)
    bool all_ok = true;
    Rational bound;  // prod_j (1 - x_j)
};

// Certificate for the lopsided local lemma: when every condition holds, the
// probability that no event occurs is at least prod (1 - x_j).
inline LllCertificate lll_bound(const EventSystem& sys, const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != sys.size())
        throw invalid_input("need one x value per event");
    for (const Rational& xi : x)
        if (!(xi > 0) || !(xi < 1)) throw invalid_input("x values must lie in (0,1)");
    const DependencyGraph g = build_dependency_graph(sys);
    LllCertificate cert;
    cert.x = x;
    cert.bound = Rational(1);
    const int k = sys.size();
    for (int i = 0; i < k; ++i) {
        Rational rhs = x[static_cast<std::size_t>(i)];
        for (int j = 0; j < k; ++j)
            if (j != i && g.edge(i, j)) rhs *= Rational(1) - x[static_cast<std::size_t>(j)];
        rhs.canonicalize();
        const bool ok = event_probability(sys, i) <= rhs;
        cert.condition_ok.push_back(ok);
        cert.all_ok &= ok;
        cert.bound *= Rational(1) - x[static_cast<std::size_t>(i)];
    }
    cert.bound.canonicalize();
    return cert;
}

// P(no event occurs), exactly, by enumerating the trees containing the base.
inline Rational none_probability(const EventSystem& sys, int n_cap = default_enumeration_cap) {
    std::vector<EdgeSet> masks;
    masks.reserve(static_cast<std::size_t>(sys.size()));
    for (const Forest& h : sys.events) masks.push_back(h.edge_set());
    Integer none = 0, total = 0;
    TreeEnumerator stream(sys.n(), sys.base, {}, n_cap);
    stream.drain([&](const std::vector<Edge>&, const EdgeSet& mask) {
        ++total;
        for (const EdgeSet& hm : masks)
            if (hm.subset_of(mask)) return;
        ++none;
    });
    if (total == 0) throw undefined_ratio("no trees contain the base forest");
    Rational p(none, total);
    p.canonicalize();
    return p;
}

struct AvoidingBound {
    Rational exact_fraction;            // trees ⊇ base avoiding t0 \ base, over |T_n[base]|
    Integer avoiding_count;             // the numerator, exact
    Integer base_count;                 // |T_n[base]|
    std::optional<Rational> lll_bound;  // (1 - 4/n)^m when produced
    bool star_like = false;             // t0 is 12-star-like
    int event_count = 0;                // m = |t0 \ base|
    bool conditions_ok = false;         // the x = 4/n certificate verified
};

// Exact fraction of trees containing `base` that avoid every edge of
// t0 \ base, against the local-lemma lower bound (1-4/n)^m. The bound is
// produced only when t0 is not 12-star-like and the x_i = 4/n conditions
// verify exactly; whenever produced, exact_fraction >= lll_bound.
inline AvoidingBound avoiding_fraction_bound(const Forest& base, const Forest& t0) {
    if (t0.n() != base.n()) throw invalid_input("forests on different vertex sets");
    const int n = base.n();
    std::vector<Edge> missing;
    for (const Edge& e : t0.edges())
        if (!base.contains(e)) missing.push_back(e);

    AvoidingBound out;
    out.event_count = static_cast<int>(missing.size());
    out.base_count = count_containing(base);
    out.avoiding_count = count_containing_avoiding(base, missing);
    out.exact_fraction = Rational(out.avoiding_count, out.base_count);
    out.exact_fraction.canonicalize();
    out.star_like = is_star_like(t0, Rational(12)).star_like;
    if (out.star_like || n < 5) return out;  // x = 4/n needs n >= 5 to lie in (0,1)

    std::vector<Forest> events;
    events.reserve(missing.size());
    for (const Edge& e : missing) events.push_back(Forest(n, {e}));
    const EventSystem sys(base, std::move(events));
    Rational x(4, n);
    x.canonicalize();
    const LllCertificate cert = lll_bound(sys, std::vector<Rational>(missing.size(), x));
    out.conditions_ok = cert.all_ok;
    if (cert.all_ok) out.lll_bound = cert.bound;
    return out;
}

// --- exact numeric chain behind the avoiding-tree bound -----------------

// (1 - 4/n)^(n/6) >= 1/2, decided exactly as 64 (n-4)^n >= n^n.
// Holds for every n >= 54 and for no n in [5, 53].
inline bool avoidance_chain_holds(unsigned long n) {
    if (n <= 4) throw invalid_input("chain inequality needs n >= 5");
    return 64 * ipow(n - 4, n) >= ipow(n, n);
}

// (1 - 4/a)^(a/6) <= (1 - 4/b)^(b/6) for a <= b, decided exactly by comparing
// the sixth powers: (a-4)^a b^b vs a^a (b-4)^b.
inline bool avoidance_chain_monotone_step(unsigned long a, unsigned long b) {
    if (a <= 4 || b < a) throw invalid_input("need 5 <= a <= b");
    return ipow(a - 4, a) * ipow(b, b) <= ipow(a, a) * ipow(b - 4, b);
}

// e^{-4} > 1/100, decided exactly against a rational upper bound on e.
inline bool e_fourth_exceeds_one_percent() { return rpow(e_upper(), 4) < 100; }

}  // namespace treespread
