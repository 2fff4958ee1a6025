#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "treespread/errors.hpp"

namespace treespread {

// Dense undirected graph over [0, v) as row bitsets.
class BitGraph {
public:
    explicit BitGraph(int v) : v_(v), words_((v + 63) / 64), rows_(static_cast<std::size_t>(v) * words_, 0) {}

    int vertices() const { return v_; }
    int words() const { return words_; }

    void add_edge(int a, int b) {
        if (a == b) throw invalid_input("no loops");
        set_bit(a, b);
        set_bit(b, a);
    }

    bool has_edge(int a, int b) const {
        return (row(a)[static_cast<std::size_t>(b >> 6)] >> (b & 63)) & 1u;
    }

    int degree(int a) const {
        int d = 0;
        const std::uint64_t* r = row(a);
        for (int w = 0; w < words_; ++w) d += std::popcount(r[w]);
        return d;
    }

    const std::uint64_t* row(int a) const { return rows_.data() + static_cast<std::size_t>(a) * words_; }
    std::uint64_t* row(int a) { return rows_.data() + static_cast<std::size_t>(a) * words_; }

private:
    void set_bit(int a, int b) {
        row(a)[static_cast<std::size_t>(b >> 6)] |= std::uint64_t{1} << (b & 63);
    }

    int v_;
    int words_;
    std::vector<std::uint64_t> rows_;
};

struct MaxCliqueResult {
    std::vector<int> members;        // ascending vertex ids
    bool exact = true;               // false when the node budget ran out
    std::uint64_t nodes_explored = 0;
};

// Exact maximum clique by branch and bound with greedy-coloring upper bounds.
// Deterministic: vertices are ordered by non-increasing degree (ties by id)
// once, candidates are processed in reverse color order, and the incumbent
// only ever improves strictly. An optional seed clique primes the incumbent,
// so budget-exhausted runs still return at least the seed.
class MaxCliqueSolver {
public:
    MaxCliqueSolver(const BitGraph& g, std::uint64_t node_budget)
        : g_(g), words_(g.words()), budget_(node_budget) {}

    MaxCliqueResult solve(const std::vector<int>& seed = {}) {
        const int v = g_.vertices();
        best_ = seed;
        for (std::size_t a = 0; a < seed.size(); ++a)
            for (std::size_t b = a + 1; b < seed.size(); ++b)
                if (!g_.has_edge(seed[a], seed[b]))
                    throw invalid_input("seed is not a clique");
        order_.resize(static_cast<std::size_t>(v));
        for (int i = 0; i < v; ++i) order_[static_cast<std::size_t>(i)] = i;
        std::sort(order_.begin(), order_.end(), [&](int a, int b) {
            const int da = g_.degree(a), db = g_.degree(b);
            if (da != db) return da > db;
            return a < b;
        });
        nodes_ = 0;
        aborted_ = false;
        std::vector<std::uint64_t> all(static_cast<std::size_t>(words_), 0);
        for (int i = 0; i < v; ++i) all[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);
        if (v > 0) {
            current_.clear();
            expand(all);
        }
        std::sort(best_.begin(), best_.end());
        return {best_, !aborted_, nodes_};
    }

private:
    using Words = std::vector<std::uint64_t>;

    bool empty(const Words& s) const {
        for (std::uint64_t w : s)
            if (w) return false;
        return true;
    }

    void expand(Words& candidates) {
        if (++nodes_ > budget_) {
            aborted_ = true;
            return;
        }
        // greedy coloring in the fixed vertex order; color = upper bound on
        // the clique size inside the class prefix
        std::vector<int> local_verts, local_colors;
        local_verts.reserve(64);
        local_colors.reserve(64);
        {
            Words uncolored = candidates;
            int color = 0;
            while (!empty(uncolored)) {
                ++color;
                Words cls = uncolored;
                for (int oi : order_) {
                    const std::size_t w = static_cast<std::size_t>(oi >> 6);
                    const std::uint64_t bit = std::uint64_t{1} << (oi & 63);
                    if (!(cls[w] & bit)) continue;
                    local_verts.push_back(oi);
                    local_colors.push_back(color);
                    uncolored[w] &= ~bit;
                    // drop the vertex and its neighbors from this color class
                    const std::uint64_t* nb = g_.row(oi);
                    cls[w] &= ~bit;
                    for (int k = 0; k < words_; ++k) cls[static_cast<std::size_t>(k)] &= ~nb[k];
                }
            }
        }
        // process verts in reverse: colors are non-increasing prune bounds
        for (int idx = static_cast<int>(local_verts.size()) - 1; idx >= 0 && !aborted_; --idx) {
            const int v = local_verts[static_cast<std::size_t>(idx)];
            if (static_cast<int>(current_.size()) + local_colors[static_cast<std::size_t>(idx)] <=
                static_cast<int>(best_.size()))
                return;
            current_.push_back(v);
            Words next(static_cast<std::size_t>(words_));
            const std::uint64_t* nb = g_.row(v);
            bool any = false;
            for (int k = 0; k < words_; ++k) {
                next[static_cast<std::size_t>(k)] = candidates[static_cast<std::size_t>(k)] & nb[k];
                any |= next[static_cast<std::size_t>(k)] != 0;
            }
            if (!any) {
                if (current_.size() > best_.size()) best_ = current_;
            } else {
                expand(next);
            }
            current_.pop_back();
            candidates[static_cast<std::size_t>(v >> 6)] &= ~(std::uint64_t{1} << (v & 63));
        }
    }

    const BitGraph& g_;
    int words_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    std::vector<int> order_;
    std::vector<int> best_;
    std::vector<int> current_;
};

inline MaxCliqueResult max_clique(const BitGraph& g, std::uint64_t node_budget,
                                  const std::vector<int>& seed = {}) {
    return MaxCliqueSolver(g, node_budget).solve(seed);
}

}  // namespace treespread
