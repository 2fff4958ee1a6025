#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "treespread/lll.hpp"
#include "treespread/selftest.hpp"

using namespace treespread;

TEST_CASE("event_probability: degenerate and closed-form cases") {
    // empty event: probability 1
    const EventSystem trivial(Forest(5, {Edge{1, 2}}), {Forest(5)});
    REQUIRE(event_probability(trivial, 0) == Rational(1));

    // all-singleton base, single-edge event: exactly 2/n
    for (int n = 4; n <= 7; ++n) {
        const EventSystem sys(Forest(n), {Forest(n, {Edge{1, 2}})});
        REQUIRE(event_probability(sys, 0) == make_rational(2, n));
    }
    // enumeration cross-check at n = 5
    REQUIRE(oracle::count_trees_filtered(5, {Edge{1, 2}}, {}) == 50);

    // event closing a cycle with the base: probability 0
    const EventSystem cyc(Forest(4, {Edge{1, 2}, Edge{2, 3}}), {Forest(4, {Edge{1, 3}})});
    REQUIRE(event_probability(cyc, 0) == Rational(0));
}

TEST_CASE("are_f_disjoint: examples") {
    const Forest singletons(6);
    REQUIRE(are_f_disjoint(singletons, Forest(6, {Edge{1, 2}}), Forest(6, {Edge{3, 4}})));
    const Forest h(6, {Edge{1, 2}});
    REQUIRE_FALSE(are_f_disjoint(singletons, h, h));  // shared vertices
    // base {1,2} merges the components of 1 and 2
    REQUIRE_FALSE(are_f_disjoint(Forest(6, {Edge{1, 2}}), Forest(6, {Edge{1, 3}}),
                                 Forest(6, {Edge{2, 4}})));
    REQUIRE(are_f_disjoint(Forest(6, {Edge{1, 2}}), Forest(6, {Edge{3, 4}}),
                           Forest(6, {Edge{5, 6}})));
}

TEST_CASE("build_dependency_graph: adjacency = NOT F-disjoint") {
    // pairwise disjoint events over an all-singleton base: edgeless
    {
        std::vector<Forest> events{Forest(8, {Edge{1, 2}}), Forest(8, {Edge{3, 4}}),
                                   Forest(8, {Edge{5, 6}}), Forest(8, {Edge{7, 8}})};
        const DependencyGraph g = build_dependency_graph(EventSystem(Forest(8), events));
        for (int i = 0; i < g.k; ++i) REQUIRE(g.degree(i) == 0);
    }
    // star edges all share the center: complete graph
    {
        std::vector<Forest> events;
        for (int v = 2; v <= 5; ++v) events.push_back(Forest(5, {Edge{1, v}}));
        const DependencyGraph g = build_dependency_graph(EventSystem(Forest(5), events));
        for (int i = 0; i < g.k; ++i) REQUIRE(g.degree(i) == g.k - 1);
    }
}

TEST_CASE("verify_independence: equality for F-disjoint events") {
    // H_j empty: both sides equal P(A_i)
    const EventSystem with_empty(Forest(6), {Forest(6, {Edge{1, 2}}), Forest(6)});
    const auto ind0 = verify_independence(with_empty, 0, 1);
    REQUIRE(ind0.equal);
    REQUIRE(ind0.lhs == make_rational(2, 6));

    // the worked instance: n = 6, base {1,2}, events {3,4} and {5,6}
    const EventSystem sys(Forest(6, {Edge{1, 2}}),
                          {Forest(6, {Edge{3, 4}}), Forest(6, {Edge{5, 6}})});
    const auto ind = verify_independence(sys, 0, 1);
    REQUIRE(ind.equal);
    REQUIRE(ind.lhs == make_rational(1, 9));

    // cyclic with base: both sides zero
    const EventSystem cyc(Forest(6, {Edge{1, 2}, Edge{2, 3}}),
                          {Forest(6, {Edge{1, 3}}), Forest(6, {Edge{5, 6}})});
    const auto zz = verify_independence(cyc, 0, 1);
    REQUIRE(zz.equal);
    REQUIRE(zz.lhs == Rational(0));

    // not F-disjoint: precondition violation
    const EventSystem bad(Forest(6), {Forest(6, {Edge{1, 2}}), Forest(6, {Edge{2, 3}})});
    REQUIRE_THROWS_AS(verify_independence(bad, 0, 1), precondition_violation);
}

TEST_CASE("verify_independence: exhaustive over small bases at n = 5") {
    const int n = 5;
    for (const Forest& base : treespread::detail::all_forests(n)) {
        if (base.edge_count() > 2) continue;
        for (int r1 = 1; r1 <= pair_count(n); ++r1)
            for (int r2 = r1 + 1; r2 <= pair_count(n); ++r2) {
                const Forest h1(n, {edge_unrank(r1, n)});
                const Forest h2(n, {edge_unrank(r2, n)});
                if (!are_f_disjoint(base, h1, h2)) continue;
                REQUIRE(verify_independence(EventSystem(base, {h1, h2}), 0, 1).equal);
            }
    }
}

TEST_CASE("verify_negative_dependency: exact equality and error paths") {
    const EventSystem sys(Forest(6, {Edge{1, 2}}),
                          {Forest(6, {Edge{3, 4}}), Forest(6, {Edge{5, 6}})});
    // empty conditioning set: conditional = unconditional by definition
    const auto plain = verify_negative_dependency(sys, 0, {});
    REQUIRE(plain.equal);
    REQUIRE(plain.conditional == plain.unconditional);

    const auto nd = verify_negative_dependency(sys, 0, {1});
    REQUIRE(nd.equal);
    REQUIRE(nd.ok);
    REQUIRE(nd.unconditional == make_rational(1, 3));

    // conditioning on a non-F-disjoint partner is rejected
    const EventSystem shared(Forest(6), {Forest(6, {Edge{1, 2}}), Forest(6, {Edge{2, 3}})});
    REQUIRE_THROWS_AS(verify_negative_dependency(shared, 0, {1}), precondition_violation);

    // probability-zero conditioning event
    const EventSystem full(Forest(2), {Forest(2, {Edge{1, 2}}), Forest(2)});
    REQUIRE_THROWS_AS(verify_negative_dependency(full, 0, {1}), undefined_conditional);
}

TEST_CASE("verify_negative_dependency: monte carlo agrees with exact mode") {
    const EventSystem sys(Forest(6, {Edge{1, 2}}),
                          {Forest(6, {Edge{3, 4}}), Forest(6, {Edge{5, 6}})});
    const auto exact = verify_negative_dependency(sys, 0, {1});
    const long trials = 100000;
    const auto mc = verify_negative_dependency(sys, 0, {1}, ProbMethod::monte_carlo, trials, 777);
    REQUIRE(mc.trials == trials);
    const double sigma = 1.0 / std::sqrt(static_cast<double>(trials));  // conservative
    const double diff = std::abs(mpq_get_d(mc.conditional.get_mpq_t()) -
                                 mpq_get_d(exact.conditional.get_mpq_t()));
    REQUIRE(diff < 3 * sigma);
}

TEST_CASE("lll_bound: certificate arithmetic") {
    // two F-disjoint events with p = 1/4 each, x = (1/4, 1/4): the graph is
    // edgeless, the bound is 9/16 and equals the exact none-probability
    const int n = 8;
    const EventSystem sys(Forest(n), {Forest(n, {Edge{1, 2}}), Forest(n, {Edge{3, 4}})});
    REQUIRE(event_probability(sys, 0) == make_rational(1, 4));
    const Rational x = make_rational(1, 4);
    const auto cert = lll_bound(sys, {x, x});
    REQUIRE(cert.all_ok);
    REQUIRE(cert.bound == make_rational(9, 16));
    REQUIRE(none_probability(sys) == make_rational(9, 16));

    // an event with probability 1 can never satisfy the condition
    const EventSystem sure(Forest(5), {Forest(5)});
    const auto bad = lll_bound(sure, {make_rational(99, 100)});
    REQUIRE_FALSE(bad.all_ok);

    REQUIRE_THROWS_AS(lll_bound(sys, {Rational(1), x}), invalid_input);
    REQUIRE_THROWS_AS(lll_bound(sys, {x}), invalid_input);
}

TEST_CASE("lll_bound: exact none-probability dominates the certificate bound") {
    std::mt19937_64 rng(1812);
    int verified = 0;
    while (verified < 10) {
        const int n = 6;
        const Forest base = treespread::detail::random_forest(n, rng);
        std::vector<Forest> events;
        for (int r = 1; r <= pair_count(n); ++r) {
            const Edge e = edge_unrank(r, n);
            if (!base.contains(e) && treespread::detail::uniform_below(rng, 4) == 0)
                events.push_back(Forest(n, {e}));
            if (events.size() == 3) break;
        }
        if (events.empty()) continue;
        const EventSystem sys(base, events);
        const Rational x = make_rational(2, 5);
        const auto cert = lll_bound(sys, std::vector<Rational>(events.size(), x));
        if (!cert.all_ok) continue;
        REQUIRE(none_probability(sys) >= cert.bound);
        ++verified;
    }
}

TEST_CASE("none_probability matches an inclusion-exclusion oracle") {
    const int n = 5;
    const Forest base(n, {Edge{1, 2}});
    const std::vector<Forest> events{Forest(n, {Edge{3, 4}}), Forest(n, {Edge{4, 5}}),
                                     Forest(n, {Edge{2, 3}})};
    const EventSystem sys(base, events);
    // oracle: inclusion-exclusion over unions of event edge sets
    Rational expected(0);
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
        std::vector<Edge> all = base.edges();
        for (int b = 0; b < 3; ++b)
            if ((mask >> b) & 1u)
                for (const Edge& e : events[static_cast<std::size_t>(b)].edges())
                    all.push_back(e);
        const auto merged = Forest::try_build(n, all);
        if (!merged) continue;
        Rational term(count_containing(*merged), count_containing(base));
        term.canonicalize();
        expected += (std::popcount(mask) % 2 == 0) ? term : Rational(-term);
    }
    expected.canonicalize();
    REQUIRE(none_probability(sys) == expected);
}

TEST_CASE("avoiding_fraction_bound: nothing to avoid") {
    const Forest base(6, {Edge{1, 2}});
    const auto rep = avoiding_fraction_bound(base, Forest(6, {Edge{1, 2}}));
    REQUIRE(rep.exact_fraction == Rational(1));
    REQUIRE(rep.event_count == 0);
}

TEST_CASE("avoiding_fraction_bound: matching instances") {
    // n=8, base = {12,34}, t0 = perfect matching: two events at probability
    // 1/4 each, independent, so the exact fraction is (3/4)^2
    const Forest base(8, {Edge{1, 2}, Edge{3, 4}});
    const Forest t0(8, {Edge{1, 2}, Edge{3, 4}, Edge{5, 6}, Edge{7, 8}});
    const auto rep = avoiding_fraction_bound(base, t0);
    REQUIRE_FALSE(rep.star_like);
    REQUIRE(rep.event_count == 2);
    REQUIRE(rep.exact_fraction == make_rational(9, 16));
    REQUIRE(rep.lll_bound.has_value());
    REQUIRE(*rep.lll_bound == make_rational(1, 4));  // (1 - 4/8)^2
    REQUIRE(rep.exact_fraction >= *rep.lll_bound);

    // n=12, base empty, t0 = perfect matching: fraction (5/6)^6 vs (2/3)^6
    const Forest base12(12);
    std::vector<Edge> matching;
    for (int i = 1; i <= 11; i += 2) matching.push_back(Edge{i, i + 1});
    const auto rep12 = avoiding_fraction_bound(base12, Forest(12, matching));
    REQUIRE(rep12.exact_fraction == rpow(make_rational(5, 6), 6));
    REQUIRE(*rep12.lll_bound == rpow(make_rational(2, 3), 6));
    REQUIRE(rep12.exact_fraction >= *rep12.lll_bound);
    REQUIRE(rep12.exact_fraction >= make_rational(1, 100));
}

TEST_CASE("avoiding_fraction_bound: star-like t0 produces no bound") {
    std::vector<Edge> star;
    for (int v = 2; v <= 8; ++v) star.push_back(Edge{1, v});
    const auto rep = avoiding_fraction_bound(Forest(8), Forest(8, star));
    REQUIRE(rep.star_like);
    REQUIRE_FALSE(rep.lll_bound.has_value());
    // every spanning tree touches the star's center, so nothing survives:
    // exactly the regime the bound excludes
    REQUIRE(rep.exact_fraction == Rational(0));
}

TEST_CASE("avoidance chain inequality: exact threshold at n = 54") {
    for (unsigned long n = 5; n <= 53; ++n) REQUIRE_FALSE(avoidance_chain_holds(n));
    for (unsigned long n = 54; n <= 120; ++n) REQUIRE(avoidance_chain_holds(n));
    REQUIRE(avoidance_chain_holds(1000));
    REQUIRE(avoidance_chain_holds(1000000));
    // monotone steps along a sampled ladder
    const unsigned long ladder[] = {5, 8, 13, 21, 54, 100, 1000, 100000, 1000000};
    for (std::size_t i = 0; i + 1 < std::size(ladder); ++i)
        REQUIRE(avoidance_chain_monotone_step(ladder[i], ladder[i + 1]));
    REQUIRE(e_fourth_exceeds_one_percent());
}
