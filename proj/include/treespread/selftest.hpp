#pragma once

#include <random>
#include <string>
#include <vector>

#include "treespread/counting.hpp"
#include "treespread/extremal.hpp"
#include "treespread/family.hpp"
#include "treespread/lll.hpp"
#include "treespread/prufer.hpp"
#include "treespread/sampling.hpp"
#include "treespread/spread_approx.hpp"
#include "treespread/spreadness.hpp"

namespace treespread {

struct SelfTestResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

namespace detail {

// All labeled forests on [n], by include/exclude over ranked edges with
// union-find pruning.
inline std::vector<Forest> all_forests(int n) {
    std::vector<Forest> out;
    std::vector<Edge> all_edges;
    for (int r = 1; r <= pair_count(n); ++r) all_edges.push_back(edge_unrank(r, n));
    std::vector<Edge> chosen;
    auto rec = [&](auto&& self, std::size_t next, UnionFind uf) -> void {
        out.push_back(Forest(n, chosen));
        for (std::size_t i = next; i < all_edges.size(); ++i) {
            UnionFind uf2 = uf;
            if (!uf2.unite(all_edges[i].u, all_edges[i].v)) continue;
            chosen.push_back(all_edges[i]);
            self(self, i + 1, std::move(uf2));
            chosen.pop_back();
        }
    };
    rec(rec, 0, UnionFind(n));
    return out;
}

inline Forest random_forest(int n, std::mt19937_64& rng) {
    std::vector<int> ranks(static_cast<std::size_t>(pair_count(n)));
    for (std::size_t i = 0; i < ranks.size(); ++i) ranks[i] = static_cast<int>(i) + 1;
    for (std::size_t i = ranks.size(); i > 1; --i)
        std::swap(ranks[i - 1], ranks[detail::uniform_below(rng, i)]);
    UnionFind uf(n);
    std::vector<Edge> edges;
    const std::size_t want = detail::uniform_below(rng, static_cast<std::uint64_t>(n));
    for (int r : ranks) {
        if (edges.size() >= want) break;
        const Edge e = edge_unrank(r, n);
        if (uf.unite(e.u, e.v)) edges.push_back(e);
    }
    return Forest(n, std::move(edges));
}

}  // namespace detail

// Cross-checks every hard (non-asymptotic) invariant at n <= max_n.
// Each entry is independent; a false `pass` means a broken implementation,
// not a failed asymptotic expectation.
inline std::vector<SelfTestResult> run_selftest(int max_n = 6) {
    std::vector<SelfTestResult> results;
    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        results.push_back({name, ok, detail});
    };

    {  // Prüfer bijection, exhaustive at n <= 5
        bool ok = true;
        for (int n = 2; n <= std::min(5, max_n) && ok; ++n)
            for (const LabeledTree& t : all_spanning_trees(n))
                if (!(prufer_decode(prufer_encode(t), n) == t)) {
                    ok = false;
                    break;
                }
        check("prufer_roundtrip_exhaustive", ok);
    }
    {  // Cayley counts from the stream
        bool ok = true;
        std::string detail;
        for (int n = 2; n <= max_n; ++n) {
            const Integer got = TreeEnumerator(n, Forest(n), {}).drain_count();
            const Integer want = ipow(static_cast<unsigned long>(n), static_cast<unsigned long>(n - 2));
            if (got != want) {
                ok = false;
                detail = "n=" + std::to_string(n);
                break;
            }
        }
        check("cayley_stream_counts", ok, detail);
    }
    {  // closed form == matrix-tree == enumeration, all forests
        bool ok = true;
        std::string detail;
        for (int n = 2; n <= max_n && ok; ++n)
            for (const Forest& f : detail::all_forests(n)) {
                const Integer closed = count_containing(f);
                const Integer mt = matrix_tree_count(n, f);
                const Integer enumerated = TreeEnumerator(n, f, {}).drain_count();
                if (closed != mt || closed != enumerated) {
                    ok = false;
                    detail = "n=" + std::to_string(n) + " edges=" + std::to_string(f.edge_count());
                    break;
                }
            }
        check("containing_count_three_routes", ok, detail);
    }
    {  // inclusion-exclusion == filtered enumeration, seeded instances
        bool ok = true;
        std::mt19937_64 rng(20240811);
        for (int trial = 0; trial < 60 && ok; ++trial) {
            const int n = 4 + static_cast<int>(detail::uniform_below(rng, static_cast<std::uint64_t>(max_n - 3)));
            const Forest f = detail::random_forest(n, rng);
            std::vector<Edge> avoids;
            for (int r = 1; r <= pair_count(n); ++r) {
                const Edge e = edge_unrank(r, n);
                if (!f.contains(e) && detail::uniform_below(rng, 4) == 0 && avoids.size() < 4)
                    avoids.push_back(e);
            }
            if (count_containing_avoiding(f, avoids) != TreeEnumerator(n, f, avoids).drain_count())
                ok = false;
        }
        check("avoiding_count_inclusion_exclusion", ok);
    }
    {  // avoid-count monotone under growing exclusion sets
        bool ok = true;
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 40 && ok; ++trial) {
            const int n = 5;
            const Forest f = detail::random_forest(n, rng);
            std::vector<Edge> avoids;
            Integer prev = count_containing(f);
            for (int r = 1; r <= pair_count(n); ++r) {
                const Edge e = edge_unrank(r, n);
                if (f.contains(e)) continue;
                avoids.push_back(e);
                const Integer now = count_containing_avoiding(f, avoids);
                if (now > prev) {
                    ok = false;
                    break;
                }
                prev = now;
                if (avoids.size() >= 5) break;
            }
        }
        check("avoiding_count_monotone", ok);
    }
    {  // degree-weight identity, enumerated vs closed form
        bool ok = true;
        std::mt19937_64 rng(99);
        for (int n = 2; n <= std::min(6, max_n) && ok; ++n)
            for (int trial = 0; trial < 10 && ok; ++trial) {
                std::vector<Integer> w;
                for (int v = 0; v < n; ++v)
                    w.push_back(Integer(1 + static_cast<long>(detail::uniform_below(rng, 10))));
                ok = tree_degree_weight_sum_enumerated(n, w) == tree_degree_weight_sum_closed_form(n, w);
            }
        check("degree_weight_identity", ok);
    }
    {  // restriction and quotient bookkeeping
        const SetFamily t5 = SetFamily::all_trees(5);
        EdgeSet x;
        x.insert(1);
        const SetFamily r = restrict_to(t5, x);
        const SetFamily q = quotient(t5, x);
        bool ok = r.size() == q.size() && r.size() == 50;
        EdgeSet y;
        y.insert(2);
        ok = ok && restrict_to(restrict_to(t5, x), y) == restrict_to(t5, x | y);
        check("restrict_quotient_bookkeeping", ok);
    }
    {  // c_i non-increasing on T_5
        const SetFamily t5 = SetFamily::all_trees(5);
        bool ok = true;
        Integer prev = concentration(t5, 0).c;
        for (int i = 1; i <= 4; ++i) {
            const Integer ci = concentration(t5, i).c;
            if (ci > prev) ok = false;
            prev = ci;
        }
        check("concentration_non_increasing", ok);
    }
    {  // spreadness of the full tree families
        bool ok = true;
        for (int n = 4; n <= std::min(5, max_n); ++n) {
            const SetFamily tn = SetFamily::all_trees(n);
            ok = ok && spreadness_check(tn, make_rational(n, 2), n - 1).holds;
        }
        check("tree_family_spreadness", ok);
    }
    {  // single-edge event probability <= 2/n over all bases
        bool ok = true;
        for (int n = 4; n <= std::min(6, max_n) && ok; ++n) {
            const Rational cap = make_rational(2, n);
            for (const Forest& base : detail::all_forests(n)) {
                for (int r = 1; r <= pair_count(n) && ok; ++r) {
                    const Edge e = edge_unrank(r, n);
                    if (base.contains(e)) continue;
                    const EventSystem sys(base, {Forest(n, {e})});
                    if (event_probability(sys, 0) > cap) ok = false;
                }
                if (!ok) break;
            }
        }
        check("edge_probability_bound", ok);
    }
    {  // independence equality for F-disjoint single-edge events at n = 5
        bool ok = true;
        const int n = 5;
        for (const Forest& base : detail::all_forests(n)) {
            if (base.edge_count() > 2) continue;
            for (int r1 = 1; r1 <= pair_count(n) && ok; ++r1)
                for (int r2 = r1 + 1; r2 <= pair_count(n) && ok; ++r2) {
                    const Forest h1(n, {edge_unrank(r1, n)});
                    const Forest h2(n, {edge_unrank(r2, n)});
                    if (!are_f_disjoint(base, h1, h2)) continue;
                    if (!verify_independence(EventSystem(base, {h1, h2}), 0, 1).equal) ok = false;
                }
            if (!ok) break;
        }
        check("f_disjoint_independence", ok);
    }
    {  // negative dependency equality, seeded instances at n = 5
        bool ok = true;
        std::mt19937_64 rng(4242);
        int done = 0;
        while (done < 25 && ok) {
            const int n = 5;
            const Forest base = detail::random_forest(n, rng);
            std::vector<Forest> events;
            for (int r = 1; r <= pair_count(n); ++r) {
                const Edge e = edge_unrank(r, n);
                if (!base.contains(e) && detail::uniform_below(rng, 3) == 0)
                    events.push_back(Forest(n, {e}));
            }
            if (events.size() < 2) continue;
            const EventSystem sys(base, events);
            const DependencyGraph g = build_dependency_graph(sys);
            std::vector<int> cond;
            for (int j = 1; j < sys.size(); ++j)
                if (!g.edge(0, j)) cond.push_back(j);
            if (cond.empty()) continue;
            try {
                if (!verify_negative_dependency(sys, 0, cond).equal) ok = false;
            } catch (const undefined_conditional&) {
                // conditioning event empty: nothing to check
            }
            ++done;
        }
        check("negative_dependency_equality", ok);
    }
    {  // certificate bound below the exact none-probability
        bool ok = true;
        const int n = 5;
        const Forest base(n);
        const EventSystem sys(base, {Forest(n, {Edge{1, 2}}), Forest(n, {Edge{3, 4}})});
        const Rational x = make_rational(1, 2);
        const LllCertificate cert = lll_bound(sys, {x, x});
        ok = cert.all_ok && none_probability(sys) >= cert.bound;
        check("lll_bound_vs_exact", ok);
    }
    {  // sampler support at n = 4
        bool ok = true;
        TreeSampler sampler(Forest(4), 2024);
        std::vector<bool> seen(16, false);
        const std::vector<LabeledTree> support = all_spanning_trees(4);
        for (int i = 0; i < 2000; ++i) {
            const LabeledTree t = sampler.draw();
            const auto it = std::find(support.begin(), support.end(), t);
            if (it == support.end()) {
                ok = false;
                break;
            }
            seen[static_cast<std::size_t>(it - support.begin())] = true;
        }
        for (bool s : seen) ok = ok && s;
        check("sampler_support", ok);
    }
    {  // spread restriction postconditions on seeded subfamilies of T_5
        bool ok = true;
        const SetFamily t5 = SetFamily::all_trees(5);
        std::mt19937_64 rng(31337);
        for (int trial = 0; trial < 30 && ok; ++trial) {
            const long size = 1 + static_cast<long>(detail::uniform_below(rng, 120));
            std::vector<EdgeSet> picked;
            for (const EdgeSet& m : t5.members())
                if (static_cast<long>(picked.size()) < size &&
                    detail::uniform_below(rng, 125) < static_cast<std::uint64_t>(size))
                    picked.push_back(m);
            if (picked.empty()) picked.push_back(t5.members().front());
            const SetFamily a(t5.universe(), picked);
            const SpreadRestriction fr =
                find_spread_restriction(a, t5, make_rational(5, 2), make_rational(5, 4));
            ok = fr.quotient_report.holds && fr.size_bound_ok;
        }
        check("spread_restriction_postconditions", ok);
    }
    {  // peeling partition invariant on T_5 restricted families
        const SetFamily t5 = SetFamily::all_trees(5);
        const Forest f(5, {Edge{1, 2}, Edge{3, 4}});
        SetFamily a = restrict_to(t5, f.edge_set());
        const PeelResult peel = spread_approximation(a, t5, 2, make_rational(5, 2), Rational(1));
        Integer covered(peel.residual.size());
        for (const auto& step : peel.steps) covered += step.family_before - step.family_after;
        bool ok = covered == a.size() && peel.all_quotients_spread && peel.all_size_bounds_ok;
        check("peel_partition_invariant", ok);
    }
    {  // constructions are t-intersecting and have the advertised sizes
        bool ok = true;
        for (int n = 4; n <= std::min(6, max_n); ++n) {
            const SetFamily spe =
                construct({.kind = ConstructionKind::star_plus_edge, .n = n, .t = 0, .forest = std::nullopt});
            const Integer want = 2 * ipow(static_cast<unsigned long>(n), static_cast<unsigned long>(n - 3)) +
                                 n - 2;
            ok = ok && Integer(spe.size()) == want && is_t_intersecting(spe, 1).ok;
            if (2 * 2 <= n) {
                const SetFamily de =
                    construct({.kind = ConstructionKind::disjoint_edges, .n = n, .t = 2, .forest = std::nullopt});
                ok = ok && is_t_intersecting(de, 2).ok;
            }
        }
        check("construction_invariants", ok);
    }
    return results;
}

}  // namespace treespread
