#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "treespread/errors.hpp"
#include "treespread/forest.hpp"
#include "treespread/prufer.hpp"

namespace treespread {

namespace detail {

// Unbiased uniform integer in [0, bound); rejection over the raw 64-bit
// stream keeps draws reproducible across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

}  // namespace detail

// Exactly uniform draws from the spanning trees of K_n containing a fixed
// forest. Components of the forest are contracted to supernodes weighted by
// their size; a weighted Prüfer sequence over supernodes picks the contracted
// tree, and every supernode incidence then picks its internal endpoint
// uniformly. Each tree containing the forest has probability
// 1 / (q_1...q_r n^(r-2)).
class TreeSampler {
public:
    TreeSampler(Forest base, std::uint64_t seed) : base_(std::move(base)), rng_(seed) {
        const int n = base_.n();
        UnionFind uf = base_.union_find();
        std::vector<int> root_index(n + 1, -1);
        for (int v = 1; v <= n; ++v) {
            const int r = uf.find(v);
            if (root_index[r] < 0) {
                root_index[r] = static_cast<int>(members_.size());
                members_.emplace_back();
            }
            members_[root_index[r]].push_back(v);
        }
        cumulative_.reserve(members_.size());
        int acc = 0;
        for (const auto& comp : members_) {
            acc += static_cast<int>(comp.size());
            cumulative_.push_back(acc);
        }
    }

    int n() const { return base_.n(); }
    const Forest& base() const { return base_; }

    LabeledTree draw() {
        const int r = static_cast<int>(members_.size());
        if (r == 1) return LabeledTree(base_);
        std::vector<Edge> edges = base_.edges();
        if (r == 2) {
            edges.push_back(pick_cross_edge(0, 1));
        } else {
            // weighted Prüfer sequence: position-wise P(supernode i) = q_i / n
            std::vector<int> seq(static_cast<std::size_t>(r - 2));
            for (int& s : seq) s = weighted_supernode();
            std::vector<Edge> super =
                prufer_decode(seq, r).edges();  // tree on supernode labels 1..r
            for (const Edge& se : super)
                edges.push_back(pick_cross_edge(se.u - 1, se.v - 1));
        }
        std::sort(edges.begin(), edges.end());
        return LabeledTree(Forest(base_.n(), std::move(edges)));
    }

private:
    int weighted_supernode() {
        const int z = static_cast<int>(detail::uniform_below(rng_, static_cast<std::uint64_t>(n())));
        int idx = 0;
        while (cumulative_[idx] <= z) ++idx;
        return idx + 1;  // 1-based supernode label
    }

    Edge pick_cross_edge(int comp_a, int comp_b) {
        const auto& ca = members_[comp_a];
        const auto& cb = members_[comp_b];
        const int a = ca[detail::uniform_below(rng_, ca.size())];
        const int b = cb[detail::uniform_below(rng_, cb.size())];
        return a < b ? Edge{a, b} : Edge{b, a};
    }

    Forest base_;
    std::mt19937_64 rng_;
    std::vector<std::vector<int>> members_;  // vertices per supernode, ascending
    std::vector<int> cumulative_;            // prefix sums of component sizes
};

inline LabeledTree sample_tree_containing(const Forest& f, std::uint64_t seed) {
    return TreeSampler(f, seed).draw();
}

}  // namespace treespread
