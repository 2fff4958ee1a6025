#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treespread/edge.hpp"
#include "treespread/edgeset.hpp"
#include "treespread/errors.hpp"
#include "treespread/forest.hpp"
#include "treespread/numbers.hpp"
#include "treespread/prufer.hpp"

namespace treespread {

// Finite family of distinct edge subsets of K_n, members kept in the
// lexicographic order of their ascending rank lists. Immutable after
// construction; every operation returns a new family.
class SetFamily {
public:
    explicit SetFamily(EdgeUniverse universe) : universe_(universe) { check_universe(); }

    SetFamily(EdgeUniverse universe, std::vector<EdgeSet> members)
        : universe_(universe), members_(std::move(members)) {
        check_universe();
        for (const EdgeSet& m : members_) {
            const auto ranks = m.ranks();
            if (!ranks.empty() && ranks.back() > universe_.size)
                throw invalid_input("family member uses a rank outside the universe");
        }
        std::sort(members_.begin(), members_.end(), lex_less);
        for (std::size_t i = 1; i < members_.size(); ++i)
            if (members_[i] == members_[i - 1]) throw invalid_input("family members must be distinct");
    }

    static SetFamily from_forests(const EdgeUniverse& universe, const std::vector<Forest>& forests) {
        std::vector<EdgeSet> members;
        members.reserve(forests.size());
        for (const Forest& f : forests) {
            if (f.n() != universe.n) throw invalid_input("forest on wrong vertex set");
            members.push_back(f.edge_set());
        }
        return SetFamily(universe, std::move(members));
    }

    // The family T_n of all spanning trees of K_n.
    static SetFamily all_trees(int n, int n_cap = default_enumeration_cap) {
        EdgeUniverse universe(n);
        std::vector<EdgeSet> members;
        TreeEnumerator stream(n, Forest(n), {}, n_cap);
        stream.drain([&](const std::vector<Edge>&, const EdgeSet& mask) { members.push_back(mask); });
        return SetFamily(universe, std::move(members));
    }

    const EdgeUniverse& universe() const { return universe_; }
    const std::vector<EdgeSet>& members() const { return members_; }
    long size() const { return static_cast<long>(members_.size()); }
    bool empty() const { return members_.empty(); }

    bool contains_member(const EdgeSet& s) const {
        return std::binary_search(members_.begin(), members_.end(), s, lex_less);
    }

    // Common member size if the family is uniform.
    std::optional<int> uniform_size() const {
        if (members_.empty()) return std::nullopt;
        const int k = members_.front().count();
        for (const EdgeSet& m : members_)
            if (m.count() != k) return std::nullopt;
        return k;
    }

    int max_member_size() const {
        int k = 0;
        for (const EdgeSet& m : members_) k = std::max(k, m.count());
        return k;
    }

    EdgeSet member_intersection() const {
        if (members_.empty()) return EdgeSet{};
        EdgeSet acc = members_.front();
        for (const EdgeSet& m : members_) acc = acc & m;
        return acc;
    }

    std::string member_to_line(const EdgeSet& m) const {
        if (m.empty()) return "-";
        std::string out;
        bool first = true;
        m.for_each_rank([&](int r) {
            const Edge e = universe_.unrank(r);
            if (!first) out += ' ';
            first = false;
            out += std::to_string(e.u) + "-" + std::to_string(e.v);
        });
        return out;
    }

    friend bool operator==(const SetFamily&, const SetFamily&) = default;

private:
    void check_universe() const {
        if (universe_.size > EdgeSet::capacity)
            throw invalid_input("edge universe exceeds 128 ranks (n > 16)");
    }

    EdgeUniverse universe_;
    std::vector<EdgeSet> members_;
};

// A[X] = members of a containing x; sets unchanged.
inline SetFamily restrict_to(const SetFamily& a, const EdgeSet& x) {
    std::vector<EdgeSet> kept;
    for (const EdgeSet& m : a.members())
        if (x.subset_of(m)) kept.push_back(m);
    return SetFamily(a.universe(), std::move(kept));
}

// A(X) = {F \ X : F in a, X subset of F}. Same cardinality as the restriction.
inline SetFamily quotient(const SetFamily& a, const EdgeSet& x) {
    std::vector<EdgeSet> kept;
    for (const EdgeSet& m : a.members())
        if (x.subset_of(m)) kept.push_back(m - x);
    return SetFamily(a.universe(), std::move(kept));
}

// A[S] = union over members A of s of the restrictions a[A], de-duplicated.
inline SetFamily restrict_over(const SetFamily& a, const SetFamily& s) {
    if (!(a.universe() == s.universe())) throw invalid_input("families on different universes");
    std::vector<EdgeSet> kept;
    for (const EdgeSet& m : a.members())
        for (const EdgeSet& x : s.members())
            if (x.subset_of(m)) {
                kept.push_back(m);
                break;
            }
    return SetFamily(a.universe(), std::move(kept));
}

struct IntersectionReport {
    bool ok = true;
    // canonical indices of the first violating pair when !ok
    int first = -1;
    int second = -1;
};

// Every pair of members shares at least t edges?
inline IntersectionReport is_t_intersecting(const SetFamily& a, int t) {
    if (t <= 0) return {};
    const auto& ms = a.members();
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j)
            if (ms[i].intersection_size(ms[j]) < t)
                return {false, static_cast<int>(i), static_cast<int>(j)};
    return {};
}

inline constexpr long default_subset_cap = 1L << 20;

// |a[S]| for every S that is a subset of some member with |S| <= max_size.
// Any S with a[S] nonempty lies inside a member, so this is the whole search
// space for restriction maximization. Sets *exhaustive=false (instead of
// throwing) when the candidate cap truncates the map.
inline std::unordered_map<EdgeSet, long, EdgeSetHash> restriction_counts(
    const SetFamily& a, int max_size = -1, long candidate_cap = default_subset_cap,
    bool* exhaustive = nullptr) {
    if (exhaustive) *exhaustive = true;
    std::unordered_map<EdgeSet, long, EdgeSetHash> counts;
    for (const EdgeSet& m : a.members()) {
        const std::vector<int> ranks = m.ranks();
        const int k = static_cast<int>(ranks.size());
        if (k > 24) throw resource_limit("member too large for subset enumeration");
        for (std::uint32_t pick = 0; pick < (std::uint32_t{1} << k); ++pick) {
            if (max_size >= 0 && std::popcount(pick) > max_size) continue;
            EdgeSet s;
            for (int b = 0; b < k; ++b)
                if ((pick >> b) & 1u) s.insert(ranks[static_cast<std::size_t>(b)]);
            auto it = counts.find(s);
            if (it != counts.end()) {
                ++it->second;
            } else if (static_cast<long>(counts.size()) < candidate_cap) {
                counts.emplace(s, 1);
            } else if (exhaustive) {
                *exhaustive = false;
            }
        }
    }
    return counts;
}

// --- family file format ------------------------------------------------
// line 1: "n count"; one member per line as space-separated "u-v" tokens with
// edges sorted; "-" denotes the empty member; '#' comments allowed.

inline SetFamily parse_family(std::istream& in, bool allow_duplicates = false) {
    std::string raw, line;
    while (std::getline(in, raw))
        if (detail::data_line(raw, line)) break;
    if (line.empty()) throw invalid_input("family file: missing header");
    std::istringstream head(line);
    int n = 0;
    long count = -1;
    if (!(head >> n >> count) || n < 1 || count < 0) throw invalid_input("family file: malformed header");
    EdgeUniverse universe(n);
    std::vector<EdgeSet> members;
    members.reserve(static_cast<std::size_t>(count));
    while (static_cast<long>(members.size()) < count) {
        if (!std::getline(in, raw)) throw invalid_input("family file: fewer members than header declares");
        if (!detail::data_line(raw, line)) continue;
        EdgeSet m;
        std::istringstream row(line);
        std::string token;
        int last_rank = 0;
        while (row >> token) {
            if (token == "-") {
                if (!m.empty() || (row >> token)) throw invalid_input("family file: '-' must stand alone");
                break;
            }
            const auto dash = token.find('-');
            if (dash == std::string::npos) throw invalid_input("family file: malformed edge token " + token);
            int u = 0, v = 0;
            try {
                u = std::stoi(token.substr(0, dash));
                v = std::stoi(token.substr(dash + 1));
            } catch (const std::exception&) {
                throw invalid_input("family file: malformed edge token " + token);
            }
            if (u < 1 || u >= v || v > n) throw invalid_input("family file: edge not canonical for n");
            const int r = universe.rank(Edge{u, v});
            if (r <= last_rank) throw invalid_input("family file: edges in a member must be sorted");
            last_rank = r;
            m.insert(r);
        }
        members.push_back(m);
    }
    if (allow_duplicates) {
        std::sort(members.begin(), members.end(), lex_less);
        members.erase(std::unique(members.begin(), members.end()), members.end());
    }
    return SetFamily(universe, std::move(members));
}

inline SetFamily parse_family(const std::string& text, bool allow_duplicates = false) {
    std::istringstream in(text);
    return parse_family(in, allow_duplicates);
}

inline void write_family(std::ostream& out, const SetFamily& a) {
    out << a.universe().n << ' ' << a.size() << '\n';
    for (const EdgeSet& m : a.members()) out << a.member_to_line(m) << '\n';
}

inline std::string family_to_string(const SetFamily& a) {
    std::ostringstream out;
    write_family(out, a);
    return out.str();
}

}  // namespace treespread
