#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reconf/errors.hpp"
#include "reconf/io_util.hpp"

namespace reconf {

/// Sorted, duplicate-free set of vertex indices. This is the carrier for
/// cliques, bags and separators; the sorted representation is canonical, so
/// equal sets compare and hash equal.
class VertexSet {
   public:
    VertexSet() = default;
    explicit VertexSet(std::vector<int> members) : members_(std::move(members)) {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }
    VertexSet(std::initializer_list<int> members) : VertexSet(std::vector<int>(members)) {}

    const std::vector<int>& members() const { return members_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }

    bool contains(int v) const { return std::binary_search(members_.begin(), members_.end(), v); }

    bool is_subset_of(const VertexSet& other) const {
        return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
    }

    VertexSet with(int v) const {
        std::vector<int> out = members_;
        auto it = std::lower_bound(out.begin(), out.end(), v);
        if (it == out.end() || *it != v) out.insert(it, v);
        VertexSet s;
        s.members_ = std::move(out);
        return s;
    }

    VertexSet without(int v) const {
        std::vector<int> out = members_;
        auto it = std::lower_bound(out.begin(), out.end(), v);
        if (it != out.end() && *it == v) out.erase(it);
        VertexSet s;
        s.members_ = std::move(out);
        return s;
    }

    VertexSet unite(const VertexSet& other) const {
        std::vector<int> out;
        out.reserve(members_.size() + other.members_.size());
        std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                       std::back_inserter(out));
        VertexSet s;
        s.members_ = std::move(out);
        return s;
    }

    VertexSet minus(const VertexSet& other) const {
        std::vector<int> out;
        std::set_difference(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                            std::back_inserter(out));
        VertexSet s;
        s.members_ = std::move(out);
        return s;
    }

    VertexSet intersect(const VertexSet& other) const {
        std::vector<int> out;
        std::set_intersection(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                              std::back_inserter(out));
        VertexSet s;
        s.members_ = std::move(out);
        return s;
    }

    int intersection_size(const VertexSet& other) const {
        int count = 0;
        std::size_t i = 0, j = 0;
        while (i < members_.size() && j < other.members_.size()) {
            if (members_[i] < other.members_[j])
                ++i;
            else if (members_[i] > other.members_[j])
                ++j;
            else {
                ++count;
                ++i;
                ++j;
            }
        }
        return count;
    }

    /// True iff |this ∩ other| >= k, stopping as soon as the answer is known.
    bool intersects_at_least(const VertexSet& other, int k) const {
        if (k <= 0) return true;
        int count = 0;
        std::size_t i = 0, j = 0;
        while (i < members_.size() && j < other.members_.size()) {
            const auto remaining = static_cast<int>(std::min(members_.size() - i, other.members_.size() - j));
            if (count + remaining < k) return false;
            if (members_[i] < other.members_[j])
                ++i;
            else if (members_[i] > other.members_[j])
                ++j;
            else {
                if (++count >= k) return true;
                ++i;
                ++j;
            }
        }
        return count >= k;
    }

    int sym_diff_size(const VertexSet& other) const {
        return size() + other.size() - 2 * intersection_size(other);
    }

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.members_ == b.members_; }
    friend bool operator!=(const VertexSet& a, const VertexSet& b) { return a.members_ != b.members_; }
    friend bool operator<(const VertexSet& a, const VertexSet& b) { return a.members_ < b.members_; }

   private:
    std::vector<int> members_;
};

using Clique = VertexSet;

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int v : s) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

namespace detail {

// Open-addressing set of packed edge keys: one flat allocation instead of a
// node per edge, which dominates construction time on large graphs.
class EdgeKeySet {
   public:
    void reset(std::size_t expected) {
        std::size_t cap = 16;
        while (cap < expected * 2 + 1) cap <<= 1;
        table_.assign(cap, kEmpty);
        mask_ = cap - 1;
    }

    bool insert(std::uint64_t key) {
        std::size_t at = probe_start(key);
        while (table_[at] != kEmpty) {
            if (table_[at] == key) return false;
            at = (at + 1) & mask_;
        }
        table_[at] = key;
        return true;
    }

    bool contains(std::uint64_t key) const {
        if (table_.empty()) return false;
        std::size_t at = probe_start(key);
        while (table_[at] != kEmpty) {
            if (table_[at] == key) return true;
            at = (at + 1) & mask_;
        }
        return false;
    }

   private:
    static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};  // never a packed pair of vertex ids

    std::size_t probe_start(std::uint64_t key) const {
        return static_cast<std::size_t>(key * 0x9e3779b97f4a7c15ull) & mask_;
    }

    std::vector<std::uint64_t> table_;
    std::size_t mask_ = 0;
};

}  // namespace detail

/// Simple undirected graph on vertices 0..n-1. Immutable once constructed,
/// so a single instance can be shared by concurrent solver runs. Adjacency
/// tests are O(1) via a hashed edge set; neighborhoods are flat sorted
/// ranges iterated in O(deg(v)).
class Graph {
   public:
    Graph() = default;

    Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
        if (n < 0) throw InputError("vertex count must be nonnegative");
        edge_keys_.reset(edges.size());
        std::vector<std::pair<int, int>> unique;
        unique.reserve(edges.size());
        for (const auto& [u, v] : edges) {
            check_vertex(u);
            check_vertex(v);
            if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
            if (edge_keys_.insert(key(u, v))) unique.push_back({u, v});
        }
        m_ = unique.size();
        offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (const auto& [u, v] : unique) {
            ++offsets_[static_cast<std::size_t>(u) + 1];
            ++offsets_[static_cast<std::size_t>(v) + 1];
        }
        for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
        targets_.resize(2 * m_);
        std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
        for (const auto& [u, v] : unique) {
            targets_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(u)]++)] = v;
            targets_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(v)]++)] = u;
        }
        for (int v = 0; v < n; ++v) {
            std::sort(targets_.begin() + offsets_[static_cast<std::size_t>(v)],
                      targets_.begin() + offsets_[static_cast<std::size_t>(v) + 1]);
        }
    }

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return m_; }

    bool has_vertex(int v) const { return v >= 0 && v < n_; }

    bool adjacent(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        if (u == v) return false;
        return edge_keys_.contains(key(u, v));
    }

    std::span<const int> neighbors(int v) const {
        check_vertex(v);
        return {targets_.data() + offsets_[static_cast<std::size_t>(v)],
                targets_.data() + offsets_[static_cast<std::size_t>(v) + 1]};
    }

    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    std::vector<std::pair<int, int>> edge_list() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(m_);
        for (int u = 0; u < n_; ++u) {
            for (int v : neighbors(u)) {
                if (u < v) out.emplace_back(u, v);
            }
        }
        return out;
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= n_) {
            throw InputError("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n_) + ")");
        }
    }

   private:
    static std::uint64_t key(int u, int v) {
        const auto a = static_cast<std::uint64_t>(std::min(u, v));
        const auto b = static_cast<std::uint64_t>(std::max(u, v));
        return (a << 32) | b;
    }

    int n_ = 0;
    std::size_t m_ = 0;
    std::vector<int> offsets_;  // n_ + 1 entries into targets_
    std::vector<int> targets_;
    detail::EdgeKeySet edge_keys_;
};

/// Parses the DIMACS-like text format: a `p edge <n> <m>` header, one
/// `e <u> <v>` line per edge with 1-based endpoints, and `c ...` comments.
/// Duplicate edge lines are collapsed silently; self-loops are rejected.
inline Graph parse_graph(std::string_view text) {
    const auto lines = detail::significant_lines(text);
    long long n = -1;
    std::vector<std::pair<int, int>> edges;
    bool saw_header = false;
    for (const auto& line : lines) {
        const auto toks = detail::tokens(line.text);
        if (toks[0] == "p") {
            if (saw_header) throw ParseError("line " + std::to_string(line.number) + ": duplicate header");
            if (toks.size() != 4 || toks[1] != "edge")
                throw ParseError("line " + std::to_string(line.number) + ": header must be 'p edge <n> <m>'");
            n = detail::parse_int(toks[2], line.number, "vertex count");
            const long long m = detail::parse_int(toks[3], line.number, "edge count");
            if (n < 0 || m < 0) throw ParseError("line " + std::to_string(line.number) + ": negative size in header");
            if (n > 1'000'000'000 || m > 2'000'000'000)
                throw ParseError("line " + std::to_string(line.number) + ": header size out of supported range");
            saw_header = true;
            edges.reserve(static_cast<std::size_t>(m));
        } else if (toks[0] == "e") {
            if (!saw_header) throw ParseError("line " + std::to_string(line.number) + ": edge before 'p edge' header");
            if (toks.size() != 3)
                throw ParseError("line " + std::to_string(line.number) + ": edge line must be 'e <u> <v>'");
            const long long u = detail::parse_int(toks[1], line.number, "endpoint");
            const long long v = detail::parse_int(toks[2], line.number, "endpoint");
            if (u < 1 || u > n || v < 1 || v > n)
                throw ParseError("line " + std::to_string(line.number) + ": vertex out of range 1.." + std::to_string(n));
            if (u == v) throw ParseError("line " + std::to_string(line.number) + ": self-loop at vertex " + std::to_string(u));
            edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
        } else {
            throw ParseError("line " + std::to_string(line.number) + ": unrecognized line '" + std::string(line.text) + "'");
        }
    }
    if (!saw_header) throw ParseError("missing 'p edge <n> <m>' header");
    return Graph(static_cast<int>(n), edges);
}

inline std::string serialize_graph(const Graph& g) {
    std::string out = "p edge " + std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
    for (const auto& [u, v] : g.edge_list()) {
        out += "e " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
    }
    return out;
}

/// True iff every pair of distinct members is adjacent. The empty set and
/// singletons are cliques.
inline bool is_clique(const Graph& g, const VertexSet& s) {
    const auto& m = s.members();
    for (int v : m) g.check_vertex(v);
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (!g.adjacent(m[i], m[j])) return false;
        }
    }
    return true;
}

/// Graph on the same vertices whose edges are exactly the non-edges of g.
/// A set is a clique of g iff it is an independent set of complement(g).
inline Graph complement(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (!g.adjacent(u, v)) edges.emplace_back(u, v);
        }
    }
    return Graph(n, edges);
}

struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_original;  // new vertex id -> original vertex id (increasing)
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
    for (int v : s) g.check_vertex(v);
    std::vector<int> new_id(static_cast<std::size_t>(g.vertex_count()), -1);
    const auto& members = s.members();
    for (std::size_t i = 0; i < members.size(); ++i) new_id[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (int u : members) {
        for (int w : g.neighbors(u)) {
            if (u < w && new_id[static_cast<std::size_t>(w)] >= 0) {
                edges.emplace_back(new_id[static_cast<std::size_t>(u)], new_id[static_cast<std::size_t>(w)]);
            }
        }
    }
    return InducedSubgraph{Graph(s.size(), edges), members};
}

}  // namespace reconf
