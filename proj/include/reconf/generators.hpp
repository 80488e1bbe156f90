#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "reconf/graph.hpp"
#include "reconf/rules.hpp"

namespace reconf {

/// Deterministic random source: a fixed engine with explicit reduction, so
/// the same seed reproduces the same bytes on every platform.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform-ish draw from [0, bound); bound must be positive.
    int below(int bound) { return static_cast<int>(next() % static_cast<std::uint64_t>(bound)); }

    bool one_in(int odds) { return below(odds) == 0; }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[static_cast<std::size_t>(below(static_cast<int>(i)))]);
        }
    }

   private:
    std::mt19937_64 engine_;
};

/// Grows a chordal graph by attaching each new vertex to a random subset of
/// an existing clique, which keeps its neighborhood complete. One vertex in
/// `fresh_component_odds` starts a new component (0 keeps the graph
/// connected).
inline Graph gen_chordal(int n, int max_attach, std::uint64_t seed, int fresh_component_odds = 8) {
    if (n < 0 || max_attach < 1) throw InputError("gen_chordal needs n >= 0 and max_attach >= 1");
    Rng rng(seed);
    std::vector<std::vector<int>> base(static_cast<std::size_t>(n));  // per vertex: a clique containing it
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) {
        if (v == 0 || (fresh_component_odds > 0 && rng.one_in(fresh_component_odds))) {
            base[static_cast<std::size_t>(v)] = {v};
            continue;
        }
        const int host = rng.below(v);
        std::vector<int> pool = base[static_cast<std::size_t>(host)];
        rng.shuffle(pool);
        const int take = 1 + rng.below(std::min<int>(static_cast<int>(pool.size()), max_attach));
        pool.resize(static_cast<std::size_t>(take));
        for (int u : pool) edges.emplace_back(v, u);
        pool.push_back(v);
        base[static_cast<std::size_t>(v)] = std::move(pool);
    }
    return Graph(n, edges);
}

/// Intersection graph of n random intervals on a discrete line.
inline Graph gen_interval(int n, std::uint64_t seed) {
    if (n < 0) throw InputError("gen_interval needs n >= 0");
    Rng rng(seed);
    const int span = std::max(4 * n, 8);
    std::vector<std::pair<int, int>> intervals(static_cast<std::size_t>(n));
    for (auto& [a, b] : intervals) {
        a = rng.below(span);
        b = a + 1 + rng.below(std::max(span / 8, 1));
    }
    // sweep the endpoints; every interval alive at a start overlaps it
    std::vector<int> by_start(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) by_start[static_cast<std::size_t>(i)] = i;
    std::sort(by_start.begin(), by_start.end(),
              [&](int x, int y) { return intervals[static_cast<std::size_t>(x)] < intervals[static_cast<std::size_t>(y)]; });
    std::vector<std::pair<int, int>> edges;
    std::vector<int> active;
    for (int i : by_start) {
        const int a = intervals[static_cast<std::size_t>(i)].first;
        active.erase(std::remove_if(active.begin(), active.end(),
                                    [&](int j) { return intervals[static_cast<std::size_t>(j)].second < a; }),
                     active.end());
        for (int j : active) edges.emplace_back(i, j);
        active.push_back(i);
    }
    return Graph(n, edges);
}

/// Erdős–Rényi graph: each pair becomes an edge independently with
/// probability percent/100.
inline Graph gen_gnp(int n, int percent, std::uint64_t seed) {
    if (n < 0 || percent < 0 || percent > 100) throw InputError("gen_gnp needs n >= 0 and percent in 0..100");
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (rng.below(100) < percent) edges.emplace_back(u, v);
        }
    }
    return Graph(n, edges);
}

inline Graph gen_grid(int rows, int cols) {
    if (rows < 0 || cols < 0) throw InputError("gen_grid needs nonnegative dimensions");
    std::vector<std::pair<int, int>> edges;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    }
    return Graph(rows * cols, edges);
}

/// Random clique grown from a random start vertex; each extension picks a
/// random common neighbor and stops early with some probability.
inline Clique random_clique(const Graph& g, Rng& rng, int max_size) {
    if (g.vertex_count() == 0 || max_size <= 0) return Clique{};
    std::vector<int> members{rng.below(g.vertex_count())};
    std::vector<int> cands;
    for (int w : g.neighbors(members[0])) cands.push_back(w);
    while (!cands.empty() && static_cast<int>(members.size()) < max_size) {
        if (static_cast<int>(members.size()) > 1 && rng.one_in(4)) break;
        const int pick = cands[static_cast<std::size_t>(rng.below(static_cast<int>(cands.size())))];
        members.push_back(pick);
        std::vector<int> next;
        for (int w : cands) {
            if (w != pick && g.adjacent(pick, w)) next.push_back(w);
        }
        cands = std::move(next);
    }
    return Clique(std::move(members));
}

/// Random clique of exactly `size` vertices, or nothing after a bounded
/// number of growth attempts.
inline std::optional<Clique> random_clique_of_size(const Graph& g, Rng& rng, int size, int attempts = 64) {
    if (size == 0) return Clique{};
    if (g.vertex_count() == 0) return std::nullopt;
    for (int t = 0; t < attempts; ++t) {
        std::vector<int> members{rng.below(g.vertex_count())};
        std::vector<int> cands;
        for (int w : g.neighbors(members[0])) cands.push_back(w);
        while (!cands.empty() && static_cast<int>(members.size()) < size) {
            const int pick = cands[static_cast<std::size_t>(rng.below(static_cast<int>(cands.size())))];
            members.push_back(pick);
            std::vector<int> next;
            for (int w : cands) {
                if (w != pick && g.adjacent(pick, w)) next.push_back(w);
            }
            cands = std::move(next);
        }
        if (static_cast<int>(members.size()) == size) return Clique(std::move(members));
    }
    return std::nullopt;
}

/// Random instance for a rule: tar draws any two cliques and a feasible
/// threshold; tj/ts draw equal-size endpoints (falling back to a trivial
/// equal pair when the graph has no second clique of the same size).
inline RuleInstance sample_instance(const Graph& g, RuleKind kind, Rng& rng, int max_clique_size = 6) {
    if (kind == RuleKind::tar) {
        Clique s = random_clique(g, rng, max_clique_size);
        Clique t = random_clique(g, rng, max_clique_size);
        const int cap = std::min(s.size(), t.size());
        const int k = rng.below(cap + 1);
        return RuleInstance(g, std::move(s), std::move(t), Rule::tar(k));
    }
    Clique s = random_clique(g, rng, max_clique_size);
    if (s.empty() && g.vertex_count() > 0) s = Clique{rng.below(g.vertex_count())};
    Clique t = random_clique_of_size(g, rng, s.size()).value_or(s);
    return RuleInstance(g, std::move(s), std::move(t), kind == RuleKind::tj ? Rule::tj() : Rule::ts());
}

}  // namespace reconf
