#pragma once

#include <compare>

#include "treespread/errors.hpp"

namespace treespread {

// Undirected edge of K_n in canonical orientation: 1 <= u < v <= n.
// Ordering is lexicographic on (u, v), which matches the rank order below.
struct Edge {
    int u = 0;
    int v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int a, int b) {
    if (a < 1 || b < 1 || a == b) throw invalid_input("edge endpoints must be distinct labels >= 1");
    return a < b ? Edge{a, b} : Edge{b, a};
}

inline long pair_count(int n) { return static_cast<long>(n) * (n - 1) / 2; }

// rank(u,v) = (u-1)n - u(u-1)/2 + (v-u): lexicographic bijection onto [1, C(n,2)].
inline int edge_rank(const Edge& e, int n) {
    return (e.u - 1) * n - e.u * (e.u - 1) / 2 + (e.v - e.u);
}

inline Edge edge_unrank(int rank, int n) {
    int u = 1;
    long offset = 0;  // number of edges whose first endpoint precedes u
    while (offset + (n - u) < rank) {
        offset += n - u;
        ++u;
    }
    return Edge{u, static_cast<int>(u + (rank - offset))};
}

// The edge ground set of K_n with its fixed rank bijection.
struct EdgeUniverse {
    int n = 0;
    int size = 0;  // C(n,2)

    explicit EdgeUniverse(int vertices) : n(vertices), size(static_cast<int>(pair_count(vertices))) {
        if (vertices < 1) throw invalid_input("edge universe needs n >= 1");
    }

    int rank(const Edge& e) const {
        if (e.u < 1 || e.u >= e.v || e.v > n) throw invalid_input("edge outside universe");
        return edge_rank(e, n);
    }

    Edge unrank(int r) const {
        if (r < 1 || r > size) throw invalid_input("edge rank out of range");
        return edge_unrank(r, n);
    }

    friend bool operator==(const EdgeUniverse&, const EdgeUniverse&) = default;
};

}  // namespace treespread
