#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "reconf/graph.hpp"
#include "reconf/rules.hpp"
#include "reconf/solve_result.hpp"

namespace reconf {

inline constexpr std::uint64_t kDefaultCliqueBudget = 10'000'000;

/// All cliques of g with min_size <= |C| <= max_size, each exactly once, in
/// lexicographic order of their sorted member lists. Enumeration extends a
/// clique only by higher-indexed common neighbors, so no non-clique subset
/// is ever tested. Throws ResourceError once more than `budget` cliques
/// would be reported.
inline std::vector<Clique> enumerate_cliques(const Graph& g, int min_size,
                                             int max_size = std::numeric_limits<int>::max(),
                                             std::uint64_t budget = kDefaultCliqueBudget) {
    std::vector<Clique> out;
    std::vector<int> current;
    auto emit = [&](const std::vector<int>& members) {
        if (out.size() >= budget) {
            throw ResourceError("clique enumeration budget of " + std::to_string(budget) +
                                " exceeded; raise --budget or use another solver");
        }
        out.push_back(Clique(members));
    };

    // DFS over the prefix tree of sorted cliques.
    auto extend = [&](auto&& self, const std::vector<int>& candidates) -> void {
        if (static_cast<int>(current.size()) >= min_size) emit(current);
        if (static_cast<int>(current.size()) >= max_size) return;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const int v = candidates[i];
            std::vector<int> next;
            for (std::size_t j = i + 1; j < candidates.size(); ++j) {
                if (g.adjacent(v, candidates[j])) next.push_back(candidates[j]);
            }
            current.push_back(v);
            self(self, next);
            current.pop_back();
        }
    };

    std::vector<int> all(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) all[static_cast<std::size_t>(v)] = v;
    extend(extend, all);
    std::sort(out.begin(), out.end());
    return out;
}

/// Explicit graph over clique states: one node per clique, one edge per
/// legal step of the rule.
struct ReconfigurationGraph {
    std::vector<Clique> nodes;
    std::vector<std::vector<int>> adj;
    std::size_t edge_count = 0;
    std::unordered_map<Clique, int, VertexSetHash> index;

    int find(const Clique& c) const {
        auto it = index.find(c);
        return it == index.end() ? -1 : it->second;
    }
};

namespace detail {

// Vertices outside `base` adjacent to every member of `base`.
inline std::vector<int> common_neighbors(const Graph& g, const Clique& base) {
    std::vector<int> out;
    if (base.empty()) {
        out.reserve(static_cast<std::size_t>(g.vertex_count()));
        for (int v = 0; v < g.vertex_count(); ++v) out.push_back(v);
        return out;
    }
    std::vector<int> count(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : base) {
        for (int w : g.neighbors(v)) ++count[static_cast<std::size_t>(w)];
    }
    for (int w = 0; w < g.vertex_count(); ++w) {
        if (count[static_cast<std::size_t>(w)] == base.size() && !base.contains(w)) out.push_back(w);
    }
    return out;
}

}  // namespace detail

inline ReconfigurationGraph build_reconfiguration_graph(const Graph& g, std::vector<Clique> cliques, Rule rule) {
    ReconfigurationGraph rg;
    rg.nodes = std::move(cliques);
    rg.adj.resize(rg.nodes.size());
    rg.index.reserve(rg.nodes.size() * 2);
    for (std::size_t i = 0; i < rg.nodes.size(); ++i) rg.index.emplace(rg.nodes[i], static_cast<int>(i));

    auto link = [&](int a, int b) {
        rg.adj[static_cast<std::size_t>(a)].push_back(b);
        rg.adj[static_cast<std::size_t>(b)].push_back(a);
        ++rg.edge_count;
    };

    if (rule.kind == RuleKind::tar) {
        // Link every clique to each of its one-smaller sub-cliques present
        // in the node set; each add/remove pair is generated from the larger
        // side exactly once.
        for (std::size_t i = 0; i < rg.nodes.size(); ++i) {
            const Clique& c = rg.nodes[i];
            if (c.size() - 1 < rule.k) continue;
            for (int v : c) {
                const int j = rg.find(c.without(v));
                if (j >= 0) link(static_cast<int>(i), j);
            }
        }
    } else {
        // Swap edges: for each clique and each removed vertex, candidate
        // replacements are the common neighbors of the rest (restricted to
        // the removed vertex's neighborhood for ts).
        for (std::size_t i = 0; i < rg.nodes.size(); ++i) {
            const Clique& c = rg.nodes[i];
            for (int v : c) {
                const Clique base = c.without(v);
                for (int w : detail::common_neighbors(g, base)) {
                    if (c.contains(w)) continue;
                    if (rule.kind == RuleKind::ts && !g.adjacent(v, w)) continue;
                    const int j = rg.find(base.with(w));
                    if (j > static_cast<int>(i)) link(static_cast<int>(i), j);
                }
            }
        }
    }
    return rg;
}

struct SolveOptions {
    std::uint64_t budget = kDefaultCliqueBudget;
    bool want_sequence = true;
    // When set for a tar instance, only cliques up to this size become nodes.
    std::optional<int> max_clique_size;
};

/// Exact shortest-distance solver: breadth-first search over the explicit
/// reconfiguration graph. Doubles as the reference oracle for every other
/// solver. `precomputed` may supply the clique list (for instance from a
/// tree decomposition); it must contain every clique within the size bounds.
inline SolveResult solve_exact(const RuleInstance& inst, const SolveOptions& options = {},
                               const std::vector<Clique>* precomputed = nullptr) {
    const auto start = std::chrono::steady_clock::now();
    SolveResult result;
    result.solver = SolverKind::exhaustive;

    if (auto why = detail::definitional_no(inst)) return detail::no_result(SolverKind::exhaustive, *why);
    if (inst.source == inst.target) return detail::trivial_yes(SolverKind::exhaustive, inst, options.want_sequence);

    int min_size = 0;
    int max_size = std::numeric_limits<int>::max();
    if (inst.rule.kind == RuleKind::tar) {
        min_size = inst.rule.k;
        if (options.max_clique_size) max_size = *options.max_clique_size;
    } else {
        min_size = max_size = inst.source.size();
    }

    std::vector<Clique> cliques;
    if (precomputed != nullptr) {
        for (const Clique& c : *precomputed) {
            if (c.size() >= min_size && c.size() <= max_size) cliques.push_back(c);
        }
    } else {
        cliques = enumerate_cliques(inst.graph(), min_size, max_size, options.budget);
    }

    const ReconfigurationGraph rg = build_reconfiguration_graph(inst.graph(), std::move(cliques), inst.rule);
    result.stats.nodes = rg.nodes.size();
    result.stats.edges = rg.edge_count;

    const int from = rg.find(inst.source);
    const int to = rg.find(inst.target);
    if (from < 0 || to < 0) throw InternalError("endpoint clique missing from the enumerated node set");

    const auto bfs = detail::bfs_path(rg.adj, from, to);
    if (bfs.reached) {
        result.yes = true;
        result.distance = bfs.distance;
        if (options.want_sequence) {
            ReconfSequence seq;
            seq.rule = inst.rule;
            seq.cliques.reserve(bfs.path.size());
            for (int id : bfs.path) seq.cliques.push_back(rg.nodes[static_cast<std::size_t>(id)]);
            result.sequence = std::move(seq);
        }
    }
    result.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace reconf
