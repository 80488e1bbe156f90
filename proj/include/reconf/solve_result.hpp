#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "reconf/rules.hpp"

namespace reconf {

enum class SolverKind { exhaustive, mcg, chordal };

inline const char* to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::exhaustive: return "exhaustive";
        case SolverKind::mcg: return "mcg";
        case SolverKind::chordal: return "chordal";
    }
    return "?";
}

struct SolveStats {
    std::uint64_t nodes = 0;  // cliques / maximal cliques / bags examined
    std::uint64_t edges = 0;
    double elapsed_ms = 0.0;
};

/// Outcome of a solve. `distance` is empty exactly when the answer is no
/// (infinite distance). When a sequence is present it validates against the
/// instance; its length equals `distance` whenever `shortest` is true.
struct SolveResult {
    bool yes = false;
    std::optional<std::uint64_t> distance;
    std::optional<ReconfSequence> sequence;
    SolverKind solver = SolverKind::exhaustive;
    bool shortest = true;
    std::string reason;                // definitional cause for a no, when there is one
    std::optional<int> tar_threshold;  // backing tar threshold when a tj/ts instance was rewritten
    SolveStats stats;
};

namespace detail {

inline std::optional<std::string> definitional_no(const RuleInstance& inst) {
    if (inst.rule.kind == RuleKind::tar) {
        if (inst.source.size() < inst.rule.k || inst.target.size() < inst.rule.k) {
            return "endpoint smaller than the threshold";
        }
    } else if (inst.source.size() != inst.target.size()) {
        return "endpoint sizes differ";
    }
    return std::nullopt;
}

inline SolveResult no_result(SolverKind solver, std::string reason) {
    SolveResult r;
    r.yes = false;
    r.solver = solver;
    r.reason = std::move(reason);
    return r;
}

inline SolveResult trivial_yes(SolverKind solver, const RuleInstance& inst, bool want_sequence) {
    SolveResult r;
    r.yes = true;
    r.distance = 0;
    r.solver = solver;
    if (want_sequence) r.sequence = ReconfSequence{inst.rule, {inst.source}};
    return r;
}

struct BfsOutcome {
    bool reached = false;
    std::uint64_t distance = 0;
    std::vector<int> path;  // node ids from source to target when reached
};

inline BfsOutcome bfs_path(const std::vector<std::vector<int>>& adj, int from, int to) {
    std::vector<int> parent(adj.size(), -2);
    std::queue<int> q;
    parent[static_cast<std::size_t>(from)] = -1;
    q.push(from);
    while (!q.empty()) {
        const int cur = q.front();
        q.pop();
        if (cur == to) break;
        for (int nxt : adj[static_cast<std::size_t>(cur)]) {
            if (parent[static_cast<std::size_t>(nxt)] == -2) {
                parent[static_cast<std::size_t>(nxt)] = cur;
                q.push(nxt);
            }
        }
    }
    BfsOutcome out;
    if (parent[static_cast<std::size_t>(to)] == -2) return out;
    out.reached = true;
    for (int cur = to; cur != -1; cur = parent[static_cast<std::size_t>(cur)]) out.path.push_back(cur);
    std::reverse(out.path.begin(), out.path.end());
    out.distance = out.path.size() - 1;
    return out;
}

}  // namespace detail

}  // namespace reconf
