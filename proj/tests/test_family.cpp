#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "treespread/family.hpp"
#include "treespread/spreadness.hpp"

using namespace treespread;

namespace {
EdgeSet set_of(std::initializer_list<int> ranks) {
    EdgeSet s;
    for (int r : ranks) s.insert(r);
    return s;
}
}  // namespace

TEST_CASE("EdgeSet ordering matches sorted-rank lexicographic order") {
    REQUIRE(lex_less(set_of({1, 4}), set_of({2, 3})));
    REQUIRE(lex_less(set_of({1, 2}), set_of({1, 2, 3})));
    REQUIRE(lex_less(set_of({1, 2}), set_of({1, 3})));
    REQUIRE_FALSE(lex_less(set_of({1, 2, 5}), set_of({1, 2})));
    REQUIRE_FALSE(lex_less(set_of({2, 3}), set_of({1, 4})));
    REQUIRE_FALSE(lex_less(set_of({1, 2}), set_of({1, 2})));
    REQUIRE(lex_less(set_of({}), set_of({1})));
    // a few ranks above 64 to cross the word boundary
    REQUIRE(lex_less(set_of({3, 70}), set_of({3, 71})));
    REQUIRE(lex_less(set_of({70}), set_of({71})));
    REQUIRE(lex_less(set_of({70}), set_of({70, 71})));
}

TEST_CASE("SetFamily canonicalizes and validates") {
    const EdgeUniverse u4(4);
    REQUIRE_THROWS_AS(SetFamily(u4, {set_of({1}), set_of({1})}), invalid_input);
    REQUIRE_THROWS_AS(SetFamily(u4, {set_of({7})}), invalid_input);  // rank > C(4,2)
    REQUIRE_THROWS_AS(SetFamily(EdgeUniverse(17)), invalid_input);   // > 128 ranks

    const SetFamily fam(u4, {set_of({2, 3}), set_of({1}), set_of({1, 4})});
    REQUIRE(fam.members()[0] == set_of({1}));
    REQUIRE(fam.members()[1] == set_of({1, 4}));
    REQUIRE(fam.members()[2] == set_of({2, 3}));
}

TEST_CASE("restrict_to: identity, filter, empty") {
    const SetFamily t4 = SetFamily::all_trees(4);
    REQUIRE(restrict_to(t4, EdgeSet{}) == t4);
    const SetFamily r = restrict_to(t4, set_of({1}));  // rank 1 = edge {1,2}
    REQUIRE(r.size() == 8);
    for (const EdgeSet& m : r.members()) REQUIRE(m.contains(1));
    // x inside no member
    const SetFamily none = restrict_to(t4, set_of({1, 6}) | set_of({2, 4}));
    REQUIRE(none.size() == oracle::restriction_count(t4, {1, 2, 4, 6}));
}

TEST_CASE("quotient: definition and size bookkeeping") {
    const EdgeUniverse u(3);
    const SetFamily a(u, {set_of({1, 2}), set_of({1, 3})});
    const SetFamily q = quotient(a, set_of({1}));
    REQUIRE(q.members() == std::vector<EdgeSet>{set_of({2}), set_of({3})});
    REQUIRE(quotient(a, EdgeSet{}) == a);

    const SetFamily t4 = SetFamily::all_trees(4);
    const SetFamily qt = quotient(t4, set_of({1}));
    REQUIRE(qt.size() == restrict_to(t4, set_of({1})).size());
    for (const EdgeSet& m : qt.members()) {
        REQUIRE(m.count() == 2);
        REQUIRE_FALSE(m.contains(1));
    }
}

TEST_CASE("restrict_over: union of restrictions, de-duplicated") {
    const SetFamily t4 = SetFamily::all_trees(4);
    const SetFamily singles(t4.universe(), {set_of({1}), set_of({6})});  // {1,2} and {3,4}
    REQUIRE(restrict_over(t4, singles).size() == 12);  // 8 + 8 - 4
    const SetFamily just_empty(t4.universe(), {EdgeSet{}});
    REQUIRE(restrict_over(t4, just_empty) == t4);
    const SetFamily empty_family(t4.universe());
    REQUIRE(restrict_over(t4, empty_family).size() == 0);
}

TEST_CASE("restriction algebra properties") {
    const SetFamily t5 = SetFamily::all_trees(5);
    std::mt19937_64 rng(2025);
    for (int trial = 0; trial < 30; ++trial) {
        EdgeSet x, y;
        for (int r = 1; r <= 10; ++r) {
            if (rng() % 4 == 0) x.insert(r);
            if (rng() % 4 == 0) y.insert(r);
        }
        REQUIRE(restrict_to(restrict_to(t5, x), y) == restrict_to(t5, x | y));
        REQUIRE(restrict_to(t5, x).size() == quotient(t5, x).size());
    }
}

TEST_CASE("concentration: endpoints and frozen values") {
    const SetFamily t4 = SetFamily::all_trees(4);
    const auto c0 = concentration(t4, 0);
    REQUIRE(c0.c == 16);
    REQUIRE(c0.d == Rational(1));
    const auto c1 = concentration(t4, 1);
    REQUIRE(c1.c == 8);
    REQUIRE(c1.d == make_rational(1, 2));
    REQUIRE(c1.argmax.has_value());
    const auto c3 = concentration(t4, 3);
    REQUIRE(c3.c == 1);  // members are distinct 3-sets
    const auto c4 = concentration(t4, 4);
    REQUIRE(c4.c == 0);  // beyond the member size
    REQUIRE_THROWS_AS(concentration(SetFamily(EdgeUniverse(4)), 1), undefined_ratio);

    // c_i never increases
    Integer prev = c0.c;
    for (int i = 1; i <= 3; ++i) {
        const Integer ci = concentration(t4, i).c;
        REQUIRE(ci <= prev);
        prev = ci;
    }
}

TEST_CASE("spreadness_check: plain mode against the full-ground-set oracle") {
    const SetFamily t4 = SetFamily::all_trees(4);
    const auto rep = spreadness_check(t4, Rational(2));
    REQUIRE(rep.holds);
    REQUIRE(oracle::r_spread_full_groundset(t4, Rational(2)));
    REQUIRE(rep.exhaustive);

    // a single-member family fails at any nonempty S
    const SetFamily single(t4.universe(), {t4.members().front()});
    const auto bad = spreadness_check(single, Rational(2));
    REQUIRE_FALSE(bad.holds);
    REQUIRE(bad.worst_ratio > 1);

    // oracle agreement on a threshold family: r just past the worst ratio flips it
    const auto t4r = spreadness_check(t4, make_rational(5, 2));
    REQUIRE(t4r.holds == oracle::r_spread_full_groundset(t4, make_rational(5, 2)));
}

TEST_CASE("spreadness_check: quotient mode") {
    // (n/2, n-1)-spread for the full family at n = 4 and 5
    REQUIRE(spreadness_check(SetFamily::all_trees(4), Rational(2), 3).holds);
    REQUIRE(spreadness_check(SetFamily::all_trees(5), make_rational(5, 2), 4).holds);
    // quotient mode is at least as strict as plain mode
    const SetFamily t5 = SetFamily::all_trees(5);
    const auto plain = spreadness_check(t5, make_rational(5, 2));
    const auto qmode = spreadness_check(t5, make_rational(5, 2), 4);
    REQUIRE(qmode.worst_ratio >= plain.worst_ratio);
}

TEST_CASE("d_i decay under (r,t)-spreadness, on the n=5 tree family") {
    const SetFamily t5 = SetFamily::all_trees(5);
    const Rational r = make_rational(5, 2);
    REQUIRE(spreadness_check(t5, r, 4).holds);
    std::vector<Rational> d;
    for (int i = 0; i <= 4; ++i) d.push_back(concentration(t5, i).d);
    for (int j = 0; j <= 4; ++j)
        for (int i = j + 1; i <= 4; ++i)
            REQUIRE(d[static_cast<std::size_t>(i)] <=
                    rpow(r, 0) / rpow(r, static_cast<unsigned long>(i - j)) * d[static_cast<std::size_t>(j)]);
}

TEST_CASE("is_t_intersecting: examples and bitset cross-validation") {
    const SetFamily t4 = SetFamily::all_trees(4);
    // all members containing a fixed pair of ranks
    const SetFamily trivial = restrict_to(t4, set_of({1, 6}));
    REQUIRE(is_t_intersecting(trivial, 2).ok);
    // two edge-disjoint trees
    const EdgeUniverse u(4);
    const SetFamily disjoint(u, {set_of({1, 2, 3}), set_of({4, 5, 6})});
    const auto bad = is_t_intersecting(disjoint, 1);
    REQUIRE_FALSE(bad.ok);
    REQUIRE(bad.first == 0);
    REQUIRE(bad.second == 1);

    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<EdgeSet> members;
        for (int m = 0; m < 8; ++m) {
            EdgeSet s;
            for (int r = 1; r <= 10; ++r)
                if (rng() % 3 == 0) s.insert(r);
            members.push_back(s);
        }
        std::sort(members.begin(), members.end(), lex_less);
        members.erase(std::unique(members.begin(), members.end()), members.end());
        const SetFamily fam(EdgeUniverse(5), members);
        for (int t = 0; t <= 3; ++t)
            REQUIRE(is_t_intersecting(fam, t).ok == oracle::t_intersecting(fam, t));
    }
}

TEST_CASE("binom_upper_bound: examples and full sweep") {
    const auto b0 = binom_upper_bound(9, 0);
    REQUIRE(b0.exact == 1);
    REQUIRE(b0.bound == Rational(1));
    REQUIRE(b0.ok);
    const auto b42 = binom_upper_bound(4, 2);
    REQUIRE(b42.exact == 6);
    REQUIRE(b42.ok);
    REQUIRE(b42.bound > Rational(29));  // (2e)^2 = 29.55..., from below
    REQUIRE(b42.bound < Rational(30));
    for (unsigned long n = 0; n <= 40; ++n)
        for (unsigned long k = 0; k <= n; ++k) REQUIRE(binom_upper_bound(n, k).ok);
    REQUIRE_THROWS_AS(binom_upper_bound(3, 4), invalid_input);
}

TEST_CASE("spread_lemma_empirical: degenerate and seeded cases") {
    const EdgeUniverse u(4);
    // a family containing the empty set hits every W
    const SetFamily with_empty(u, {EdgeSet{}, set_of({1})});
    const auto always = spread_lemma_empirical(with_empty, 1, Rational(2), 2, make_rational(1, 4),
                                               200, 42);
    REQUIRE(always.empirical == Rational(1));

    // r*delta <= 1 makes the bound vacuous
    const SetFamily t4 = SetFamily::all_trees(4);
    const auto vac = spread_lemma_empirical(t4, 3, Rational(2), 2, make_rational(1, 4), 100, 7);
    REQUIRE(vac.lower_bound_approx == 0.0);
    REQUIRE(vac.pass);

    // seeded Monte Carlo on T_5: report must assert its own inequality
    const SetFamily t5 = SetFamily::all_trees(5);
    const auto rep = spread_lemma_empirical(t5, 4, make_rational(5, 2), 4, make_rational(1, 5),
                                            10000, 20240810);
    REQUIRE(rep.spread_ok);
    REQUIRE(rep.trials == 10000);
    REQUIRE(rep.pass);

    REQUIRE_THROWS_AS(
        spread_lemma_empirical(t4, 3, Rational(2), 5, make_rational(1, 2), 10, 1),
        invalid_input);  // beta*delta > 1
}

TEST_CASE("family file format round-trips byte-identically") {
    const SetFamily t4 = SetFamily::all_trees(4);
    const std::string text = family_to_string(t4);
    const SetFamily back = parse_family(text);
    REQUIRE(back == t4);
    REQUIRE(family_to_string(back) == text);

    // empty member round-trips through the "-" line
    const SetFamily with_empty(EdgeUniverse(4), {EdgeSet{}, set_of({3})});
    const std::string etext = family_to_string(with_empty);
    REQUIRE(parse_family(etext) == with_empty);

    REQUIRE_THROWS_AS(parse_family("4 2\n1-2\n"), invalid_input);      // truncated
    REQUIRE_THROWS_AS(parse_family("4 1\n2-1\n"), invalid_input);      // not canonical
    REQUIRE_THROWS_AS(parse_family("4 1\n1-3 1-2\n"), invalid_input);  // unsorted member
    REQUIRE_THROWS_AS(parse_family("4 2\n1-2\n1-2\n"), invalid_input); // duplicate members
}
