#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "treespread/errors.hpp"
#include "treespread/forest.hpp"
#include "treespread/numbers.hpp"

namespace treespread {

// Sequence in [n]^(n-2); bijective with spanning trees of K_n for n >= 2
// under smallest-leaf elimination.
using PruferSeq = std::vector<int>;

// Exhaustive tree streams refuse to start beyond this many vertices
// (n = 10 already means 10^8 trees). Closed-form counting has no cap.
inline constexpr int default_enumeration_cap = 10;

inline PruferSeq prufer_encode(const LabeledTree& t) {
    const int n = t.n();
    if (n < 2) throw invalid_input("prufer_encode needs n >= 2");
    // parent pointers toward root n; the surviving neighbor of any
    // eliminated leaf is always its parent
    std::vector<int> parent(n + 1, 0), deg(n + 1, 0), stack;
    {
        std::vector<std::vector<int>> adj(n + 1);
        for (const Edge& e : t.edges()) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
            ++deg[e.u];
            ++deg[e.v];
        }
        stack.push_back(n);
        std::vector<bool> seen(n + 1, false);
        seen[n] = true;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    parent[w] = v;
                    stack.push_back(w);
                }
        }
    }
    PruferSeq seq;
    seq.reserve(static_cast<std::size_t>(n - 2));
    int ptr = 1;
    while (deg[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int i = 0; i < n - 2; ++i) {
        const int p = parent[leaf];
        seq.push_back(p);
        if (--deg[p] == 1 && p < ptr) {
            leaf = p;
        } else {
            ++ptr;
            while (deg[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    return seq;
}

namespace detail {
// Decode into a reusable edge buffer; callers validate the sequence.
inline void prufer_decode_into(const PruferSeq& seq, int n, std::vector<Edge>& out,
                               std::vector<int>& deg) {
    out.clear();
    deg.assign(static_cast<std::size_t>(n + 1), 1);
    for (int x : seq) ++deg[x];
    int ptr = 1;
    while (deg[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int x : seq) {
        out.push_back(leaf < x ? Edge{leaf, x} : Edge{x, leaf});
        if (--deg[x] == 1 && x < ptr) {
            leaf = x;
        } else {
            ++ptr;
            while (deg[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    out.push_back(Edge{leaf, n});
}
}  // namespace detail

inline LabeledTree prufer_decode(const PruferSeq& seq, int n) {
    if (n < 2) throw invalid_input("prufer_decode needs n >= 2");
    if (static_cast<int>(seq.size()) != n - 2) throw invalid_input("prufer sequence length must be n-2");
    for (int x : seq)
        if (x < 1 || x > n) throw invalid_input("prufer sequence entry out of range");
    std::vector<Edge> edges;
    std::vector<int> deg;
    detail::prufer_decode_into(seq, n, edges, deg);
    std::sort(edges.begin(), edges.end());
    Forest f(n, std::move(edges));
    return LabeledTree(std::move(f));
}

// Streams spanning trees of K_n containing `contains` and avoiding `avoids`,
// each exactly once, in Prüfer-lexicographic order.
class TreeEnumerator {
public:
    TreeEnumerator(int n, Forest contains, std::vector<Edge> avoids,
                   int n_cap = default_enumeration_cap)
        : n_(n), contains_(std::move(contains)) {
        if (n < 1) throw invalid_input("enumeration needs n >= 1");
        if (n > n_cap) throw resource_limit("enumeration cap exceeded (n > cap)");
        if (contains_.n() != n) throw invalid_input("constraint forest has wrong n");
        contains_mask_ = contains_.edge_set();
        for (const Edge& e : avoids) {
            if (e.u < 1 || e.u >= e.v || e.v > n) throw invalid_input("avoided edge outside [n]");
            if (contains_.contains(e)) throw invalid_input("avoided edge also required");
            avoid_mask_.insert(edge_rank(e, n));
        }
        if (n_ >= 3) seq_.assign(static_cast<std::size_t>(n_ - 2), 1);
    }

    // next matching tree, or nullopt when the stream is exhausted
    std::optional<LabeledTree> next() {
        while (!done_) {
            current_edges();
            const bool keep = contains_mask_.subset_of(mask_) && !avoid_mask_.intersects(mask_);
            advance();
            if (keep) {
                std::vector<Edge> edges = scratch_;
                std::sort(edges.begin(), edges.end());
                Forest f(n_, std::move(edges));
                return LabeledTree(std::move(f));
            }
        }
        return std::nullopt;
    }

    // count the rest of the stream without materializing trees
    Integer drain_count() {
        Integer total = 0;
        while (!done_) {
            current_edges();
            if (contains_mask_.subset_of(mask_) && !avoid_mask_.intersects(mask_)) ++total;
            advance();
        }
        return total;
    }

    // apply fn to each remaining tree's sorted edge list (no tree object built)
    template <class Fn>
    void drain(Fn&& fn) {
        while (!done_) {
            current_edges();
            if (contains_mask_.subset_of(mask_) && !avoid_mask_.intersects(mask_)) {
                std::vector<Edge> edges = scratch_;
                std::sort(edges.begin(), edges.end());
                fn(edges, mask_);
            }
            advance();
        }
    }

private:
    void current_edges() {
        if (n_ == 1) {
            scratch_.clear();
            mask_ = EdgeSet{};
            return;
        }
        detail::prufer_decode_into(seq_, n_, scratch_, deg_scratch_);
        mask_ = EdgeSet{};
        for (const Edge& e : scratch_) mask_.insert(edge_rank(e, n_));
    }

    void advance() {
        for (int i = static_cast<int>(seq_.size()) - 1; i >= 0; --i) {
            if (seq_[i] < n_) {
                ++seq_[i];
                return;
            }
            seq_[i] = 1;
        }
        done_ = true;  // odometer wrapped; n <= 2 has a single tree
    }

    int n_;
    Forest contains_;
    EdgeSet contains_mask_;
    EdgeSet avoid_mask_;
    PruferSeq seq_;
    std::vector<Edge> scratch_;
    std::vector<int> deg_scratch_;
    EdgeSet mask_;
    bool done_ = false;
};

inline std::vector<LabeledTree> enumerate_trees(int n, const Forest& contains,
                                                const std::vector<Edge>& avoids,
                                                int n_cap = default_enumeration_cap) {
    TreeEnumerator stream(n, contains, avoids, n_cap);
    std::vector<LabeledTree> out;
    while (auto t = stream.next()) out.push_back(std::move(*t));
    return out;
}

inline std::vector<LabeledTree> all_spanning_trees(int n, int n_cap = default_enumeration_cap) {
    return enumerate_trees(n, Forest(n), {}, n_cap);
}

}  // namespace treespread
