#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "treespread/errors.hpp"
#include "treespread/forest.hpp"
#include "treespread/numbers.hpp"
#include "treespread/prufer.hpp"

namespace treespread {

namespace detail {

// Product-of-component-sizes formula from a prepared union-find:
// q_1 q_2 ... q_r * n^(r-2). Isolated vertices count as components of size 1.
// r = 1 collapses to 1 (a spanning tree contains only itself).
inline Integer count_containing_from_uf(const UnionFind& uf, int n) {
    const int r = uf.components();
    if (r == 1) return 1;
    Integer product = 1;
    for (int v = 1; v <= n; ++v)
        if (uf.find(v) == v) product *= uf.component_size(v);
    return product * ipow(static_cast<unsigned long>(n), static_cast<unsigned long>(r - 2));
}

}  // namespace detail

// |T_n[f]|: number of spanning trees of K_n containing the forest f.
// Equals q_1 q_2 ... q_r * n^(n - 2 - sum(q_i - 1)) over component sizes q_i.
inline Integer count_containing(const Forest& f) {
    return detail::count_containing_from_uf(f.union_find(), f.n());
}

// Independent oracle for count_containing: contract each component of
// `forced` to a supernode, build the Laplacian of the contracted complete
// multigraph (multiplicity between supernodes = product of component sizes)
// and take a cofactor determinant, exactly over the integers (Bareiss).
inline Integer matrix_tree_count(int n, const Forest& forced) {
    if (forced.n() != n) throw invalid_input("forced forest has wrong n");
    UnionFind uf = forced.union_find();
    std::vector<long> weight;  // component sizes, one per supernode
    {
        std::vector<int> root_index(n + 1, -1);
        for (int v = 1; v <= n; ++v) {
            const int r = uf.find(v);
            if (root_index[r] < 0) {
                root_index[r] = static_cast<int>(weight.size());
                weight.push_back(0);
            }
            ++weight[root_index[r]];
        }
    }
    const int r = static_cast<int>(weight.size());
    if (r == 1) return 1;
    const int m = r - 1;  // delete last row and column
    std::vector<std::vector<Integer>> a(m, std::vector<Integer>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a[i][j] = (i == j) ? Integer(weight[i]) * (n - weight[i])
                               : Integer(-weight[i]) * weight[j];
    // Bareiss fraction-free elimination
    Integer prev = 1;
    int sign = 1;
    for (int k = 0; k < m - 1; ++k) {
        if (a[k][k] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < m; ++i)
                if (a[i][k] != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < m; ++i) {
            for (int j = k + 1; j < m; ++j) {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[m - 1][m - 1] : Integer(-a[m - 1][m - 1]);
}

// Number of spanning trees containing f and touching none of `avoids`,
// by inclusion-exclusion over subsets of `avoids`; cyclic unions contribute 0.
inline Integer count_containing_avoiding(const Forest& f, const std::vector<Edge>& avoids) {
    const int n = f.n();
    for (const Edge& e : avoids) {
        if (e.u < 1 || e.u >= e.v || e.v > n) throw invalid_input("avoided edge outside [n]");
        if (f.contains(e)) throw invalid_input("avoided edge is required by the forest");
    }
    const int m = static_cast<int>(avoids.size());
    if (m > 24) throw resource_limit("inclusion-exclusion over more than 2^24 terms");
    Integer total = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
        UnionFind uf(n);
        bool acyclic = true;
        for (const Edge& e : f.edges())
            uf.unite(e.u, e.v);
        for (int b = 0; b < m && acyclic; ++b)
            if ((mask >> b) & 1u)
                acyclic = uf.unite(avoids[b].u, avoids[b].v);
        if (!acyclic) continue;
        const Integer term = detail::count_containing_from_uf(uf, n);
        if (std::popcount(mask) % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

// A forest is c-star-like when some edge shares an endpoint with at least
// n/c of its other edges. Comparison is exact: adj * c >= n as rationals.
struct StarLikeness {
    bool star_like = false;
    std::optional<Edge> witness;  // first such edge in canonical order
};

inline StarLikeness is_star_like(const Forest& f, const Rational& c) {
    if (c <= 0) throw invalid_input("star-likeness parameter must be positive");
    const std::vector<int> deg = f.degrees();
    const Integer n_times_den = Integer(f.n()) * c.get_den();
    for (const Edge& e : f.edges()) {
        const int adjacent = deg[e.u] + deg[e.v] - 2;
        if (Integer(adjacent) * c.get_num() >= n_times_den) return {true, e};
    }
    return {false, std::nullopt};
}

// Sum over spanning trees T of prod_v weights[v]^deg_T(v).
// Closed form: w_1 ... w_n * (w_1 + ... + w_n)^(n-2).
inline Integer tree_degree_weight_sum_closed_form(int n, const std::vector<Integer>& weights) {
    if (n < 2) throw invalid_input("degree-weight sum needs n >= 2");
    if (static_cast<int>(weights.size()) != n) throw invalid_input("need one weight per vertex");
    Integer product = 1, sum = 0;
    for (const Integer& w : weights) {
        if (w <= 0) throw invalid_input("weights must be positive");
        product *= w;
        sum += w;
    }
    Integer s;
    mpz_pow_ui(s.get_mpz_t(), sum.get_mpz_t(), static_cast<unsigned long>(n - 2));
    return product * s;
}

inline Integer tree_degree_weight_sum_enumerated(int n, const std::vector<Integer>& weights,
                                                 int n_cap = default_enumeration_cap) {
    if (n < 2) throw invalid_input("degree-weight sum needs n >= 2");
    if (static_cast<int>(weights.size()) != n) throw invalid_input("need one weight per vertex");
    Integer total = 0;
    TreeEnumerator stream(n, Forest(n), {}, n_cap);
    std::vector<int> deg(static_cast<std::size_t>(n + 1));
    stream.drain([&](const std::vector<Edge>& edges, const EdgeSet&) {
        std::fill(deg.begin(), deg.end(), 0);
        for (const Edge& e : edges) {
            ++deg[e.u];
            ++deg[e.v];
        }
        Integer term = 1;
        for (int v = 1; v <= n; ++v) term *= ipow(weights[static_cast<std::size_t>(v - 1)],
                                                  static_cast<unsigned long>(deg[v]));
        total += term;
    });
    return total;
}

// Enumerates below the threshold, closed form above; the two routes agree
// wherever both run (property-tested).
inline Integer tree_degree_weight_sum(int n, const std::vector<Integer>& weights,
                                      int enumeration_threshold = 8) {
    if (n <= enumeration_threshold)
        return tree_degree_weight_sum_enumerated(n, weights, enumeration_threshold);
    return tree_degree_weight_sum_closed_form(n, weights);
}

struct StarLikeTreeCount {
    Integer exact;          // c-star-like spanning trees, by enumeration
    Integer analytic_bound; // ceil(2^n * n^(n - n/(2c)))
};

// exact <= analytic_bound whenever n/(2c) >= 1 triggers the degree argument;
// the bound field is the exact ceiling of 2^n * n^(n - n/(2c)).
inline StarLikeTreeCount count_star_like_trees(int n, const Rational& c,
                                               int n_cap = default_enumeration_cap) {
    if (c <= 0) throw invalid_input("star-likeness parameter must be positive");
    Integer exact = 0;
    TreeEnumerator stream(n, Forest(n), {}, n_cap);
    const Integer n_times_den = Integer(n) * c.get_den();
    std::vector<int> deg(static_cast<std::size_t>(n + 1));
    stream.drain([&](const std::vector<Edge>& edges, const EdgeSet&) {
        std::fill(deg.begin(), deg.end(), 0);
        for (const Edge& e : edges) {
            ++deg[e.u];
            ++deg[e.v];
        }
        for (const Edge& e : edges) {
            if (Integer(deg[e.u] + deg[e.v] - 2) * c.get_num() >= n_times_den) {
                ++exact;
                break;
            }
        }
    });
    // 2^n * n^alpha with alpha = n - n/(2c) = a/b >= 0:
    // the bound is the b-th root of 2^(nb) * n^a, rounded up.
    Rational alpha = Rational(n) - Rational(n) * c.get_den() / (2 * c.get_num());
    alpha.canonicalize();
    if (alpha < 0) throw invalid_input("analytic bound undefined for c < 1/2");
    const unsigned long b = static_cast<unsigned long>(alpha.get_den().get_ui());
    const unsigned long a = static_cast<unsigned long>(alpha.get_num().get_ui());
    Integer inner = ipow(2ul, static_cast<unsigned long>(n) * b) * ipow(static_cast<unsigned long>(n), a);
    return {exact, ceil_kth_root(inner, b)};
}

}  // namespace treespread
