#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "treespread/extremal.hpp"

using namespace treespread;

TEST_CASE("construct: disjoint edges") {
    const SetFamily fam = construct({.kind = ConstructionKind::disjoint_edges,
                                     .n = 4,
                                     .t = 2,
                                     .forest = std::nullopt});
    REQUIRE(fam.size() == 4);  // 2^2 * 4^0
    REQUIRE(is_t_intersecting(fam, 2).ok);
    REQUIRE_THROWS_AS(construct({.kind = ConstructionKind::disjoint_edges,
                                 .n = 5,
                                 .t = 3,
                                 .forest = std::nullopt}),
                      invalid_input);

    // closed form across the board
    for (int n = 4; n <= 7; ++n)
        for (int t = 1; 2 * t <= n; ++t) {
            const SetFamily f = construct(
                {.kind = ConstructionKind::disjoint_edges, .n = n, .t = t, .forest = std::nullopt});
            REQUIRE(Integer(f.size()) ==
                    ipow(2ul, static_cast<unsigned long>(t)) *
                        ipow(static_cast<unsigned long>(n), static_cast<unsigned long>(n - t - 2)));
            REQUIRE(is_t_intersecting(f, t).ok);
        }
}

TEST_CASE("construct: star plus edge") {
    for (int n = 4; n <= 7; ++n) {
        const SetFamily fam = construct(
            {.kind = ConstructionKind::star_plus_edge, .n = n, .t = 0, .forest = std::nullopt});
        const Integer expected =
            2 * ipow(static_cast<unsigned long>(n), static_cast<unsigned long>(n - 3)) + n - 2;
        REQUIRE(Integer(fam.size()) == expected);
        REQUIRE(is_t_intersecting(fam, 1).ok);
    }
    REQUIRE(construct({.kind = ConstructionKind::star_plus_edge, .n = 5, .t = 0, .forest = std::nullopt})
                .size() == 53);
}

TEST_CASE("construct: all stars pairwise share exactly the center edge") {
    const SetFamily stars = construct(
        {.kind = ConstructionKind::all_stars, .n = 5, .t = 0, .forest = std::nullopt});
    REQUIRE(stars.size() == 5);
    REQUIRE(is_t_intersecting(stars, 1).ok);
    for (std::size_t i = 0; i < stars.members().size(); ++i)
        for (std::size_t j = i + 1; j < stars.members().size(); ++j)
            REQUIRE(stars.members()[i].intersection_size(stars.members()[j]) == 1);
}

TEST_CASE("construct: custom forest") {
    const Forest f(5, {Edge{1, 2}, Edge{3, 4}});
    const SetFamily fam = construct(
        {.kind = ConstructionKind::custom, .n = 5, .t = 0, .forest = f});
    REQUIRE(Integer(fam.size()) == count_containing(f));
    for (const EdgeSet& m : fam.members()) REQUIRE(f.edge_set().subset_of(m));
}

TEST_CASE("restriction_size_classification: the three n=6 cases") {
    // 3 disjoint edges: equality at 2^3 * 6
    const auto matching = restriction_size_classification(
        Forest(6, {Edge{1, 2}, Edge{3, 4}, Edge{5, 6}}), 3);
    REQUIRE(matching.matching_case);
    REQUIRE(matching.size == 48);
    REQUIRE(matching.bound == 48);
    REQUIRE(matching.ok);

    // 2-edge path: 3 * 36 = 108, the boundary of (3/4) * 2^2 * 36
    const auto path2 = restriction_size_classification(Forest(6, {Edge{1, 2}, Edge{2, 3}}), 2);
    REQUIRE_FALSE(path2.matching_case);
    REQUIRE(path2.size == 108);
    REQUIRE(path2.bound == 108);
    REQUIRE(path2.ok);

    // 3-edge path: 4 * 6 = 24 <= 36
    const auto path3 = restriction_size_classification(
        Forest(6, {Edge{1, 2}, Edge{2, 3}, Edge{3, 4}}), 3);
    REQUIRE_FALSE(path3.matching_case);
    REQUIRE(path3.size == 24);
    REQUIRE(path3.bound == 36);
    REQUIRE(path3.ok);

    REQUIRE_THROWS_AS(restriction_size_classification(
                          Forest(6, {Edge{1, 2}, Edge{2, 3}, Edge{3, 4}, Edge{4, 5}}), 4),
                      out_of_scope);
    REQUIRE_THROWS_AS(restriction_size_classification(Forest(6, {Edge{1, 2}}), 2), invalid_input);
}

TEST_CASE("max_t_intersecting_exact: degenerate t") {
    const auto all = max_t_intersecting_exact(4, 0);
    REQUIRE(all.max_size == 16);
    REQUIRE(all.exact);
    const auto top = max_t_intersecting_exact(4, 3);
    REQUIRE(top.max_size == 1);  // distinct trees share at most n-2 edges
    REQUIRE(top.exact);
    REQUIRE_THROWS_AS(max_t_intersecting_exact(7, 1), resource_limit);
    REQUIRE_THROWS_AS(max_t_intersecting_exact(4, 4), invalid_input);
}

TEST_CASE("max_t_intersecting_exact matches the subset-lattice oracle at n = 4") {
    const SetFamily t4 = SetFamily::all_trees(4);
    for (int t = 0; t <= 3; ++t) {
        const auto report = max_t_intersecting_exact(4, t);
        REQUIRE(report.exact);
        const int lattice = oracle::max_t_intersecting_lattice(t4.members(), t);
        REQUIRE(report.max_size == lattice);
        // the witness really is a t-intersecting family of the right size
        const SetFamily witness(t4.universe(), report.witness);
        REQUIRE(Integer(witness.size()) == report.max_size);
        REQUIRE(is_t_intersecting(witness, t).ok);
    }
}

TEST_CASE("max_t_intersecting_exact dominates the built-in constructions") {
    const auto r42 = max_t_intersecting_exact(4, 2);
    REQUIRE(r42.max_size >= 4);
    REQUIRE(r42.construction_size == 4);
    const auto r52 = max_t_intersecting_exact(5, 2);
    REQUIRE(r52.exact);
    REQUIRE(r52.max_size >= r52.construction_size);
    REQUIRE(r52.construction_size == 20);
}

TEST_CASE("budget exhaustion reports a lower bound, never a fake exact") {
    const auto starved = max_t_intersecting_exact(5, 1, 10);
    REQUIRE_FALSE(starved.exact);
    // the incumbent is still seeded with the best construction
    REQUIRE(starved.max_size >= starved.construction_size);
    REQUIRE(starved.construction_size == 53);
}

TEST_CASE("verify_main_bound: the t = 1 maximum beats the reference bound at n = 5") {
    const auto rep = verify_main_bound(5, 1);
    REQUIRE(rep.reference_bound == 50);
    REQUIRE(rep.construction_size == 53);
    REQUIRE(rep.construction == "star-plus-edge");
    REQUIRE(rep.exact);
    REQUIRE(rep.max_size == 53);
    REQUIRE(rep.max_size > rep.reference_bound);
}

TEST_CASE("verify_main_bound: matching-bound cases") {
    const auto r42 = verify_main_bound(4, 2);
    REQUIRE(r42.reference_bound == 4);
    REQUIRE(r42.max_size == 4);  // lattice-verified above
    const auto r43 = verify_main_bound(4, 3);
    REQUIRE(r43.reference_bound == 2);  // floor(2^3 / 4)
    REQUIRE(r43.max_size == 1);
}
