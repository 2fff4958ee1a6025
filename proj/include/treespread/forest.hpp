#pragma once

#include <algorithm>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "treespread/edge.hpp"
#include "treespread/edgeset.hpp"
#include "treespread/errors.hpp"

namespace treespread {

// Disjoint-set union over vertex labels 1..n.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n + 1), size_(n + 1, 1), components_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int v) const {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    // false if a and b were already connected
    bool unite(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        if (size_[ra] < size_[rb]) std::swap(ra, rb);
        parent_[rb] = ra;
        size_[ra] += size_[rb];
        --components_;
        return true;
    }

    bool connected(int a, int b) const { return find(a) == find(b); }
    int component_size(int v) const { return size_[find(v)]; }
    int components() const { return components_; }

private:
    mutable std::vector<int> parent_;
    std::vector<int> size_;
    int components_;
};

// Labeled acyclic edge set on vertex set [n]. Isolated vertices belong to the
// forest: the ambient n is part of the value, not derivable from the edges.
class Forest {
public:
    explicit Forest(int n) : n_(n) {
        if (n < 1) throw invalid_input("forest needs n >= 1");
    }

    Forest(int n, std::vector<Edge> edges) : Forest(n) {
        std::sort(edges.begin(), edges.end());
        UnionFind uf(n);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const Edge& e = edges[i];
            if (e.u < 1 || e.u >= e.v || e.v > n) throw invalid_input("edge outside [n] or not canonical");
            if (i > 0 && edges[i - 1] == e) throw invalid_input("duplicate edge");
            if (!uf.unite(e.u, e.v)) throw invalid_input("edge set contains a cycle");
        }
        edges_ = std::move(edges);
    }

    // nullopt instead of throwing when the edge set is cyclic
    static std::optional<Forest> try_build(int n, std::vector<Edge> edges) {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        UnionFind uf(n);
        for (const Edge& e : edges)
            if (!uf.unite(e.u, e.v)) return std::nullopt;
        Forest f(n);
        f.edges_ = std::move(edges);
        return f;
    }

    static std::optional<Forest> try_union(const Forest& a, const Forest& b) {
        if (a.n() != b.n()) throw invalid_input("forests on different vertex sets");
        std::vector<Edge> all = a.edges();
        all.insert(all.end(), b.edges().begin(), b.edges().end());
        return try_build(a.n(), std::move(all));
    }

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    bool contains(const Edge& e) const {
        return std::binary_search(edges_.begin(), edges_.end(), e);
    }

    UnionFind union_find() const {
        UnionFind uf(n_);
        for (const Edge& e : edges_) uf.unite(e.u, e.v);
        return uf;
    }

    // Component sizes including isolated vertices, ascending. Sums to n.
    std::vector<int> component_sizes() const {
        UnionFind uf = union_find();
        std::vector<int> sizes;
        for (int v = 1; v <= n_; ++v)
            if (uf.find(v) == v) sizes.push_back(uf.component_size(v));
        std::sort(sizes.begin(), sizes.end());
        return sizes;
    }

    int component_count() const { return union_find().components(); }

    bool is_spanning_tree() const { return edge_count() == n_ - 1; }  // acyclic already

    std::vector<int> degrees() const {
        std::vector<int> deg(n_ + 1, 0);
        for (const Edge& e : edges_) {
            ++deg[e.u];
            ++deg[e.v];
        }
        return deg;
    }

    EdgeSet edge_set() const {
        EdgeSet s;
        for (const Edge& e : edges_) s.insert(edge_rank(e, n_));
        return s;
    }

    friend bool operator==(const Forest&, const Forest&) = default;

private:
    int n_;
    std::vector<Edge> edges_;  // sorted by (u, v)
};

// Spanning tree of K_n: a connected forest with n-1 edges.
class LabeledTree {
public:
    explicit LabeledTree(Forest f) : f_(std::move(f)) {
        if (!f_.is_spanning_tree()) throw invalid_input("forest is not a spanning tree");
    }

    const Forest& forest() const { return f_; }
    int n() const { return f_.n(); }
    const std::vector<Edge>& edges() const { return f_.edges(); }
    EdgeSet edge_set() const { return f_.edge_set(); }

    friend bool operator==(const LabeledTree&, const LabeledTree&) = default;

private:
    Forest f_;
};

// --- forest file format ------------------------------------------------
// line 1: "n m", then m lines "u v" with 1 <= u < v <= n, sorted
// lexicographically. Blank lines and lines starting with '#' are ignored.

namespace detail {
inline bool data_line(const std::string& raw, std::string& out) {
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos) return false;
    if (raw[first] == '#') return false;
    out = raw;
    return true;
}
}  // namespace detail

inline Forest parse_forest(std::istream& in) {
    std::string raw, line;
    while (std::getline(in, raw))
        if (detail::data_line(raw, line)) break;
    if (line.empty()) throw invalid_input("forest file: missing header line");
    std::istringstream head(line);
    int n = 0;
    long m = -1;
    if (!(head >> n >> m) || n < 1 || m < 0) throw invalid_input("forest file: malformed header");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    while (static_cast<long>(edges.size()) < m) {
        if (!std::getline(in, raw)) throw invalid_input("forest file: fewer edges than header declares");
        if (!detail::data_line(raw, line)) continue;
        std::istringstream row(line);
        int u = 0, v = 0;
        if (!(row >> u >> v)) throw invalid_input("forest file: malformed edge line");
        std::string extra;
        if (row >> extra) throw invalid_input("forest file: trailing tokens on edge line");
        if (u < 1 || u >= v || v > n) throw invalid_input("forest file: edge not canonical for n");
        if (!edges.empty() && !(edges.back() < Edge{u, v}))
            throw invalid_input("forest file: edges not sorted");
        edges.push_back(Edge{u, v});
    }
    return Forest(n, std::move(edges));
}

inline Forest parse_forest(const std::string& text) {
    std::istringstream in(text);
    return parse_forest(in);
}

inline void write_forest(std::ostream& out, const Forest& f) {
    out << f.n() << ' ' << f.edge_count() << '\n';
    for (const Edge& e : f.edges()) out << e.u << ' ' << e.v << '\n';
}

inline std::string forest_to_string(const Forest& f) {
    std::ostringstream out;
    write_forest(out, f);
    return out.str();
}

}  // namespace treespread
