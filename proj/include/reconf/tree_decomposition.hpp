#pragma once

#include <queue>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "reconf/exhaustive.hpp"
#include "reconf/graph.hpp"

namespace reconf {

struct TreeDecomposition {
    int declared_n = 0;  // vertex count announced in the header
    std::vector<VertexSet> bags;
    std::vector<std::pair<int, int>> edges;  // bag indices

    int width() const {
        int w = -1;
        for (const auto& bag : bags) w = std::max(w, bag.size() - 1);
        return w;
    }
};

/// PACE 2017 .td format: `s td <#bags> <max-bag-size> <n>`, one `b <id>
/// <vertices...>` line per bag, then one `<i> <j>` line per tree edge;
/// everything 1-based and `c ...` comments allowed.
inline TreeDecomposition parse_tree_decomposition(std::string_view text) {
    TreeDecomposition td;
    bool saw_header = false;
    long long bag_count = 0;
    std::vector<bool> seen;
    for (const auto& line : detail::significant_lines(text)) {
        const auto toks = detail::tokens(line.text);
        if (toks[0] == "s") {
            if (saw_header) throw ParseError("line " + std::to_string(line.number) + ": duplicate header");
            if (toks.size() != 5 || toks[1] != "td")
                throw ParseError("line " + std::to_string(line.number) + ": header must be 's td <#bags> <size> <n>'");
            bag_count = detail::parse_int(toks[2], line.number, "bag count");
            detail::parse_int(toks[3], line.number, "bag size bound");
            const long long n = detail::parse_int(toks[4], line.number, "vertex count");
            if (bag_count < 0 || n < 0) throw ParseError("line " + std::to_string(line.number) + ": negative header value");
            if (bag_count > 1'000'000'000 || n > 1'000'000'000)
                throw ParseError("line " + std::to_string(line.number) + ": header size out of supported range");
            td.declared_n = static_cast<int>(n);
            td.bags.resize(static_cast<std::size_t>(bag_count));
            seen.assign(static_cast<std::size_t>(bag_count), false);
            saw_header = true;
        } else if (toks[0] == "b") {
            if (!saw_header) throw ParseError("line " + std::to_string(line.number) + ": bag before header");
            if (toks.size() < 2) throw ParseError("line " + std::to_string(line.number) + ": bag line needs an id");
            const long long id = detail::parse_int(toks[1], line.number, "bag id");
            if (id < 1 || id > bag_count)
                throw ParseError("line " + std::to_string(line.number) + ": bag id out of range 1.." + std::to_string(bag_count));
            if (seen[static_cast<std::size_t>(id - 1)])
                throw ParseError("line " + std::to_string(line.number) + ": duplicate bag " + std::to_string(id));
            seen[static_cast<std::size_t>(id - 1)] = true;
            std::vector<int> vs;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                const long long v = detail::parse_int(toks[i], line.number, "vertex");
                if (v < 1 || v > td.declared_n)
                    throw ParseError("line " + std::to_string(line.number) + ": vertex out of range 1.." +
                                     std::to_string(td.declared_n));
                vs.push_back(static_cast<int>(v - 1));
            }
            td.bags[static_cast<std::size_t>(id - 1)] = VertexSet(std::move(vs));
        } else {
            if (!saw_header) throw ParseError("line " + std::to_string(line.number) + ": edge before header");
            if (toks.size() != 2) throw ParseError("line " + std::to_string(line.number) + ": expected a tree edge '<i> <j>'");
            const long long a = detail::parse_int(toks[0], line.number, "bag id");
            const long long b = detail::parse_int(toks[1], line.number, "bag id");
            if (a < 1 || a > bag_count || b < 1 || b > bag_count)
                throw ParseError("line " + std::to_string(line.number) + ": bag id out of range 1.." + std::to_string(bag_count));
            td.edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
        }
    }
    if (!saw_header) throw ParseError("missing 's td ...' header");
    return td;
}

inline std::string serialize_tree_decomposition(const TreeDecomposition& td) {
    int max_bag = 0;
    for (const auto& bag : td.bags) max_bag = std::max(max_bag, bag.size());
    std::string out = "s td " + std::to_string(td.bags.size()) + " " + std::to_string(max_bag) + " " +
                      std::to_string(td.declared_n) + "\n";
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out += "b " + std::to_string(i + 1);
        for (int v : td.bags[i]) out += " " + std::to_string(v + 1);
        out += "\n";
    }
    for (const auto& [a, b] : td.edges) out += std::to_string(a + 1) + " " + std::to_string(b + 1) + "\n";
    return out;
}

/// Checks the two decomposition conditions against g: every edge of g lies
/// inside some bag, and the bags containing any fixed vertex induce a
/// connected subtree. Also checks that the bag graph is a tree. Throws
/// InputError naming the first violation.
inline void validate_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
    if (td.declared_n != g.vertex_count()) {
        throw InputError("decomposition is for " + std::to_string(td.declared_n) + " vertices but the graph has " +
                         std::to_string(g.vertex_count()));
    }
    const auto b = static_cast<int>(td.bags.size());
    if (b == 0) {
        if (g.vertex_count() == 0) return;
        throw InputError("decomposition has no bags");
    }

    std::vector<std::vector<int>> tree(static_cast<std::size_t>(b));
    for (const auto& [x, y] : td.edges) {
        tree[static_cast<std::size_t>(x)].push_back(y);
        tree[static_cast<std::size_t>(y)].push_back(x);
    }
    if (static_cast<int>(td.edges.size()) != b - 1) throw InputError("bag graph is not a tree (wrong edge count)");
    {
        std::vector<char> visited(static_cast<std::size_t>(b), 0);
        std::queue<int> q;
        q.push(0);
        visited[0] = 1;
        int reached = 1;
        while (!q.empty()) {
            const int cur = q.front();
            q.pop();
            for (int nxt : tree[static_cast<std::size_t>(cur)]) {
                if (!visited[static_cast<std::size_t>(nxt)]) {
                    visited[static_cast<std::size_t>(nxt)] = 1;
                    ++reached;
                    q.push(nxt);
                }
            }
        }
        if (reached != b) throw InputError("bag graph is not a tree (disconnected)");
    }

    std::vector<std::vector<int>> bags_of(static_cast<std::size_t>(g.vertex_count()));
    for (int i = 0; i < b; ++i) {
        for (int v : td.bags[static_cast<std::size_t>(i)]) bags_of[static_cast<std::size_t>(v)].push_back(i);
    }

    for (int v = 0; v < g.vertex_count(); ++v) {
        if (bags_of[static_cast<std::size_t>(v)].empty())
            throw InputError("vertex " + std::to_string(v + 1) + " appears in no bag");
    }

    for (const auto& [u, v] : g.edge_list()) {
        bool covered = false;
        for (int i : bags_of[static_cast<std::size_t>(u)]) {
            if (td.bags[static_cast<std::size_t>(i)].contains(v)) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            throw InputError("edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) + " is covered by no bag");
        }
    }

    // Connected traces: BFS within the sub-forest of bags containing v.
    std::vector<char> in_trace(static_cast<std::size_t>(b), 0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& trace = bags_of[static_cast<std::size_t>(v)];
        for (int i : trace) in_trace[static_cast<std::size_t>(i)] = 1;
        std::queue<int> q;
        std::vector<int> visited_list;
        q.push(trace[0]);
        in_trace[static_cast<std::size_t>(trace[0])] = 2;
        visited_list.push_back(trace[0]);
        std::size_t reached = 1;
        while (!q.empty()) {
            const int cur = q.front();
            q.pop();
            for (int nxt : tree[static_cast<std::size_t>(cur)]) {
                if (in_trace[static_cast<std::size_t>(nxt)] == 1) {
                    in_trace[static_cast<std::size_t>(nxt)] = 2;
                    visited_list.push_back(nxt);
                    ++reached;
                    q.push(nxt);
                }
            }
        }
        const bool connected = reached == trace.size();
        for (int i : trace) in_trace[static_cast<std::size_t>(i)] = 0;
        for (int i : visited_list) in_trace[static_cast<std::size_t>(i)] = 0;
        if (!connected) {
            throw InputError("vertex " + std::to_string(v + 1) + " appears in a disconnected set of bags");
        }
    }
}

/// Enumerates cliques bag-locally and deduplicates across bags. Every clique
/// of g lies inside some bag of a valid decomposition, so the result equals
/// enumerate_cliques on the whole graph.
inline std::vector<Clique> enumerate_cliques_from_td(const Graph& g, const TreeDecomposition& td, int min_size,
                                                     std::uint64_t budget = kDefaultCliqueBudget) {
    validate_tree_decomposition(g, td);
    std::unordered_set<Clique, VertexSetHash> seen;
    std::vector<Clique> out;
    auto emit = [&](const std::vector<int>& members) {
        Clique c(members);
        if (seen.insert(c).second) {
            if (out.size() >= budget) {
                throw ResourceError("clique enumeration budget of " + std::to_string(budget) + " exceeded");
            }
            out.push_back(std::move(c));
        }
    };

    std::vector<int> current;
    auto extend = [&](auto&& self, const std::vector<int>& candidates) -> void {
        if (static_cast<int>(current.size()) >= min_size) emit(current);
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

    if (min_size <= 0) emit({});
    for (const auto& bag : td.bags) {
        extend(extend, bag.members());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace reconf
