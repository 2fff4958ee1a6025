#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "treespread/errors.hpp"

namespace treespread {

// Fixed-capacity set of edge ranks (1-based), two 64-bit words.
// Capacity 128 covers the edge universe of K_n up to n = 16; every exhaustive
// family search in this library lives well inside that.
struct EdgeSet {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    static constexpr int capacity = 128;

    static void check_rank(int rank) {
        if (rank < 1 || rank > capacity) throw invalid_input("edge rank outside EdgeSet capacity");
    }

    bool contains(int rank) const {
        const int b = rank - 1;
        return b < 64 ? (lo >> b) & 1u : (hi >> (b - 64)) & 1u;
    }

    EdgeSet& insert(int rank) {
        check_rank(rank);
        const int b = rank - 1;
        if (b < 64)
            lo |= std::uint64_t{1} << b;
        else
            hi |= std::uint64_t{1} << (b - 64);
        return *this;
    }

    EdgeSet& erase(int rank) {
        const int b = rank - 1;
        if (b < 64)
            lo &= ~(std::uint64_t{1} << b);
        else
            hi &= ~(std::uint64_t{1} << (b - 64));
        return *this;
    }

    int count() const { return std::popcount(lo) + std::popcount(hi); }
    bool empty() const { return (lo | hi) == 0; }

    bool subset_of(const EdgeSet& o) const { return (lo & ~o.lo) == 0 && (hi & ~o.hi) == 0; }
    bool intersects(const EdgeSet& o) const { return (lo & o.lo) | (hi & o.hi); }
    int intersection_size(const EdgeSet& o) const {
        return std::popcount(lo & o.lo) + std::popcount(hi & o.hi);
    }

    friend EdgeSet operator&(const EdgeSet& a, const EdgeSet& b) { return {a.lo & b.lo, a.hi & b.hi}; }
    friend EdgeSet operator|(const EdgeSet& a, const EdgeSet& b) { return {a.lo | b.lo, a.hi | b.hi}; }
    // set difference
    friend EdgeSet operator-(const EdgeSet& a, const EdgeSet& b) { return {a.lo & ~b.lo, a.hi & ~b.hi}; }

    friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

    // Ascending ranks.
    std::vector<int> ranks() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        for (std::uint64_t w = lo; w; w &= w - 1) out.push_back(std::countr_zero(w) + 1);
        for (std::uint64_t w = hi; w; w &= w - 1) out.push_back(std::countr_zero(w) + 65);
        return out;
    }

    template <class Fn>
    void for_each_rank(Fn&& fn) const {
        for (std::uint64_t w = lo; w; w &= w - 1) fn(std::countr_zero(w) + 1);
        for (std::uint64_t w = hi; w; w &= w - 1) fn(std::countr_zero(w) + 65);
    }
};

// Order that matches lexicographic comparison of the ascending rank lists,
// so sorted families diff cleanly and tie-breaks are reproducible.
inline bool lex_less(const EdgeSet& a, const EdgeSet& b) {
    const std::uint64_t d0 = a.lo ^ b.lo;
    const std::uint64_t d1 = a.hi ^ b.hi;
    if ((d0 | d1) == 0) return false;
    // s = smallest differing rank; everything below s is shared.
    int s_bit;  // 0-based position over the 128-bit span
    bool s_in_a;
    if (d0) {
        s_bit = std::countr_zero(d0);
        s_in_a = (a.lo >> s_bit) & 1u;
    } else {
        const int b_bit = std::countr_zero(d1);
        s_in_a = (a.hi >> b_bit) & 1u;
        s_bit = b_bit + 64;
    }
    auto has_above = [&](const EdgeSet& x) {
        if (s_bit < 64) {
            const std::uint64_t mask = ~((std::uint64_t{2} << s_bit) - 1);  // bits > s_bit
            return (x.lo & mask) != 0 || x.hi != 0;
        }
        const std::uint64_t mask = ~((std::uint64_t{2} << (s_bit - 64)) - 1);
        return (x.hi & mask) != 0;
    };
    // If a owns s: a's next element after the shared prefix is s, b's is either
    // something larger (a first) or nothing (b is a's prefix, b first).
    return s_in_a ? has_above(b) : !has_above(a);
}

struct EdgeSetHash {
    std::size_t operator()(const EdgeSet& s) const {
        std::uint64_t x = s.lo * 0x9e3779b97f4a7c15ull;
        x ^= (s.hi + 0x9e3779b97f4a7c15ull + (x << 6) + (x >> 2));
        x ^= x >> 29;
        x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 32;
        return static_cast<std::size_t>(x);
    }
};

}  // namespace treespread
