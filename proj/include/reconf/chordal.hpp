#pragma once

#include <chrono>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "reconf/graph.hpp"
#include "reconf/rules.hpp"
#include "reconf/solve_result.hpp"

namespace reconf {

/// Maximum-cardinality search: repeatedly selects an unvisited vertex with
/// the most visited neighbors (ties to the lowest index). Returns the
/// selection order; its reverse is a perfect elimination ordering iff the
/// graph is chordal.
inline std::vector<int> mcs_order(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> weight(static_cast<std::size_t>(n), 0);
    std::vector<char> numbered(static_cast<std::size_t>(n), 0);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    // lazy max-queue over packed (weight, lowest-index-first) keys; stale
    // entries are skipped on pop
    const auto pack = [n](int w, int v) {
        return (static_cast<std::uint64_t>(w) << 32) | static_cast<std::uint64_t>(n - v);
    };
    std::priority_queue<std::uint64_t> pq;
    std::vector<std::uint64_t> initial;
    initial.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) initial.push_back(pack(0, v));
    pq = std::priority_queue<std::uint64_t>(std::less<std::uint64_t>(), std::move(initial));
    while (!pq.empty()) {
        const std::uint64_t top = pq.top();
        pq.pop();
        const int w = static_cast<int>(top >> 32);
        const int v = n - static_cast<int>(top & 0xffffffffu);
        if (numbered[static_cast<std::size_t>(v)] || w != weight[static_cast<std::size_t>(v)]) continue;
        numbered[static_cast<std::size_t>(v)] = 1;
        order.push_back(v);
        for (int u : g.neighbors(v)) {
            if (!numbered[static_cast<std::size_t>(u)]) {
                pq.push(pack(++weight[static_cast<std::size_t>(u)], u));
            }
        }
    }
    return order;
}

struct NotChordalWitness {
    // u and w are later neighbors of v in the tested ordering but are not
    // adjacent to each other.
    int v = -1, u = -1, w = -1;
};

struct ChordalityResult {
    bool chordal = false;
    std::vector<int> peo;  // elimination order (first eliminated first); valid when chordal
    NotChordalWitness witness;
};

/// Tests chordality by verifying the reversed maximum-cardinality-search
/// order as a perfect elimination ordering: for each vertex, its later
/// neighbors minus the earliest of them must all be adjacent to that
/// earliest one.
inline ChordalityResult check_chordal(const Graph& g) {
    const int n = g.vertex_count();
    const auto selection = mcs_order(g);
    std::vector<int> peo(selection.rbegin(), selection.rend());
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(peo[static_cast<std::size_t>(i)])] = i;

    // deferred checks: at `parent`, every recorded w must be its neighbor
    std::vector<std::vector<std::pair<int, int>>> pending(static_cast<std::size_t>(n));  // (w, origin v)
    for (int v : peo) {
        int parent = -1;
        for (int u : g.neighbors(v)) {
            if (pos[static_cast<std::size_t>(u)] > pos[static_cast<std::size_t>(v)] &&
                (parent == -1 || pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(parent)])) {
                parent = u;
            }
        }
        if (parent == -1) continue;
        for (int u : g.neighbors(v)) {
            if (u != parent && pos[static_cast<std::size_t>(u)] > pos[static_cast<std::size_t>(v)]) {
                pending[static_cast<std::size_t>(parent)].emplace_back(u, v);
            }
        }
    }
    for (int u = 0; u < n; ++u) {
        for (const auto& [w, v] : pending[static_cast<std::size_t>(u)]) {
            if (!g.adjacent(u, w)) {
                return ChordalityResult{false, {}, NotChordalWitness{v, u, w}};
            }
        }
    }
    return ChordalityResult{true, std::move(peo), {}};
}

/// Tree (forest, for disconnected graphs) whose nodes are the maximal
/// cliques and where the cliques containing any fixed vertex induce a
/// connected subtree. `home[v]` is the node whose clique absorbed v when it
/// was numbered; for a vertex contained in exactly one maximal clique this
/// is that clique.
struct CliqueTree {
    std::vector<Clique> cliques;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> home;
};

/// Builds a clique tree of a chordal graph from the elimination ordering
/// produced by check_chordal. The construction replays the search order:
/// a vertex whose visited-neighbor count does not grow past the previous
/// one starts a fresh maximal clique, which hangs off the clique of its
/// most recently visited neighbor.
inline CliqueTree build_clique_tree(const Graph& g, const std::vector<int>& peo) {
    const int n = g.vertex_count();
    if (static_cast<int>(peo.size()) != n) throw InternalError("elimination ordering has the wrong length");
    CliqueTree tree;
    tree.home.assign(static_cast<std::size_t>(n), -1);

    std::vector<char> numbered(static_cast<std::size_t>(n), 0);
    std::vector<int> last(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> raw;  // clique contents under construction
    int prev_mark = -1;
    int cur = -1;

    for (int idx = n - 1; idx >= 0; --idx) {  // selection order
        const int x = peo[static_cast<std::size_t>(idx)];
        int mark = 0;
        for (int u : g.neighbors(x)) {
            if (numbered[static_cast<std::size_t>(u)]) ++mark;
        }
        if (cur < 0 || mark <= prev_mark) {
            std::vector<int> members;
            members.reserve(static_cast<std::size_t>(mark) + 1);
            members.push_back(x);
            for (int u : g.neighbors(x)) {
                if (numbered[static_cast<std::size_t>(u)]) members.push_back(u);
            }
            raw.push_back(std::move(members));
            cur = static_cast<int>(raw.size()) - 1;
            if (last[static_cast<std::size_t>(x)] != -1) {
                tree.edges.emplace_back(cur, tree.home[static_cast<std::size_t>(last[static_cast<std::size_t>(x)])]);
            }
        } else {
            raw[static_cast<std::size_t>(cur)].push_back(x);
        }
        tree.home[static_cast<std::size_t>(x)] = cur;
        numbered[static_cast<std::size_t>(x)] = 1;
        for (int u : g.neighbors(x)) {
            if (!numbered[static_cast<std::size_t>(u)]) last[static_cast<std::size_t>(u)] = x;
        }
        prev_mark = mark;
    }
    tree.cliques.reserve(raw.size());
    for (auto& members : raw) tree.cliques.push_back(Clique(std::move(members)));
    return tree;
}

/// Ordered maximal cliques of an interval graph with, per vertex, the first
/// (l) and last (r) bag index containing it; membership is exactly the
/// index interval [l, r].
struct CliquePath {
    int n = 0;  // vertex count of the underlying graph
    std::vector<Clique> bags;
    std::vector<int> lvalue, rvalue;
};

/// Fills lvalue/rvalue and verifies the consecutive-membership property and
/// that adjacent bags differ.
inline void compute_lr(CliquePath& cp) {
    cp.lvalue.assign(static_cast<std::size_t>(cp.n), -1);
    cp.rvalue.assign(static_cast<std::size_t>(cp.n), -1);
    std::vector<int> count(static_cast<std::size_t>(cp.n), 0);
    for (std::size_t i = 0; i < cp.bags.size(); ++i) {
        if (i > 0 && cp.bags[i] == cp.bags[i - 1]) throw InternalError("consecutive bags of a clique path must differ");
        for (int v : cp.bags[i]) {
            if (cp.lvalue[static_cast<std::size_t>(v)] < 0) cp.lvalue[static_cast<std::size_t>(v)] = static_cast<int>(i);
            cp.rvalue[static_cast<std::size_t>(v)] = static_cast<int>(i);
            ++count[static_cast<std::size_t>(v)];
        }
    }
    for (int v = 0; v < cp.n; ++v) {
        const int l = cp.lvalue[static_cast<std::size_t>(v)];
        const int r = cp.rvalue[static_cast<std::size_t>(v)];
        if (l < 0) throw InternalError("vertex " + std::to_string(v) + " appears in no bag");
        if (count[static_cast<std::size_t>(v)] != r - l + 1) {
            throw InternalError("vertex " + std::to_string(v) + " appears in non-consecutive bags");
        }
    }
}

/// Interval instance equivalent to a tar instance on a chordal graph.
struct IntervalReduction {
    Graph h;                       // induced interval subgraph
    std::vector<int> to_original;  // h vertex -> original vertex
    Clique source_h, target_h;     // endpoints in h labels
    CliquePath path;               // bags in h labels
    bool disconnected = false;     // endpoints lie in different components
};

/// Reduces a tar instance on a chordal graph to one on an interval subgraph
/// with the same shortest distance. Two helper vertices are attached, one
/// joined to the whole source and one to the whole target; each then sits in
/// exactly one maximal clique of the augmented graph, so the unique clique
/// tree path between those two cliques pins down the region every shortest
/// transformation stays inside. The helpers are stripped before returning.
inline IntervalReduction reduce_to_interval(const RuleInstance& inst) {
    if (inst.rule.kind != RuleKind::tar) throw InputError("reduce_to_interval expects a tar instance");
    const Graph& g = inst.graph();
    const auto chordality = check_chordal(g);
    if (!chordality.chordal) {
        throw NotChordalError("graph is not chordal; use the mcg or exhaustive solver");
    }

    const int n = g.vertex_count();
    const int d1 = n, d2 = n + 1;
    auto edges = g.edge_list();
    edges.reserve(edges.size() + static_cast<std::size_t>(inst.source.size() + inst.target.size()));
    for (int v : inst.source) edges.emplace_back(d1, v);
    for (int v : inst.target) edges.emplace_back(d2, v);
    const Graph aug(n + 2, edges);

    // Both helper vertices are simplicial, so the augmented graph is still
    // chordal and needs no second verification pass, only a search order.
    const auto aug_selection = mcs_order(aug);
    const std::vector<int> aug_peo(aug_selection.rbegin(), aug_selection.rend());
    const CliqueTree tree = build_clique_tree(aug, aug_peo);

    const int start = tree.home[static_cast<std::size_t>(d1)];
    const int goal = tree.home[static_cast<std::size_t>(d2)];

    std::vector<std::vector<int>> tree_adj(tree.cliques.size());
    for (const auto& [a, b] : tree.edges) {
        tree_adj[static_cast<std::size_t>(a)].push_back(b);
        tree_adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<int> parent(tree.cliques.size(), -2);
    std::queue<int> q;
    parent[static_cast<std::size_t>(start)] = -1;
    q.push(start);
    while (!q.empty()) {
        const int curnode = q.front();
        q.pop();
        if (curnode == goal) break;
        for (int nxt : tree_adj[static_cast<std::size_t>(curnode)]) {
            if (parent[static_cast<std::size_t>(nxt)] == -2) {
                parent[static_cast<std::size_t>(nxt)] = curnode;
                q.push(nxt);
            }
        }
    }

    IntervalReduction out;
    if (parent[static_cast<std::size_t>(goal)] == -2) {
        out.disconnected = true;
        return out;
    }

    std::vector<int> node_path;
    for (int curnode = goal; curnode != -1; curnode = parent[static_cast<std::size_t>(curnode)]) node_path.push_back(curnode);
    std::reverse(node_path.begin(), node_path.end());

    std::vector<Clique> bags;
    bags.reserve(node_path.size());
    const Clique dummies{d1, d2};
    for (int id : node_path) bags.push_back(tree.cliques[static_cast<std::size_t>(id)].minus(dummies));

    // The end bags were maximal only thanks to the helpers; drop them while
    // they are swallowed by their neighbor.
    std::size_t lo = 0, hi = bags.size() - 1;
    while (lo < hi && bags[lo].is_subset_of(bags[lo + 1])) ++lo;
    while (hi > lo && bags[hi].is_subset_of(bags[hi - 1])) --hi;
    std::vector<Clique> kept(bags.begin() + static_cast<std::ptrdiff_t>(lo),
                             bags.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    bags = std::move(kept);

    std::vector<int> support_members;
    for (const auto& bag : bags) {
        support_members.insert(support_members.end(), bag.members().begin(), bag.members().end());
    }
    const VertexSet support(std::move(support_members));
    auto induced = induced_subgraph(g, support);

    std::vector<int> to_h(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < induced.to_original.size(); ++i) {
        to_h[static_cast<std::size_t>(induced.to_original[i])] = static_cast<int>(i);
    }
    auto relabel = [&](const Clique& c) {
        std::vector<int> vs;
        vs.reserve(static_cast<std::size_t>(c.size()));
        for (int v : c) {
            if (to_h[static_cast<std::size_t>(v)] < 0) throw InternalError("clique vertex missing from the path support");
            vs.push_back(to_h[static_cast<std::size_t>(v)]);
        }
        return Clique(std::move(vs));
    };

    out.path.n = induced.graph.vertex_count();
    out.path.bags.reserve(bags.size());
    for (const auto& bag : bags) out.path.bags.push_back(relabel(bag));
    out.source_h = relabel(inst.source);
    out.target_h = relabel(inst.target);
    out.h = std::move(induced.graph);
    out.to_original = std::move(induced.to_original);
    return out;
}

enum class TieBreak { lowest_index, highest_index };

struct GreedyOptions {
    TieBreak tie_break = TieBreak::lowest_index;
    bool want_sequence = true;
};

/// Shortest tar(k) transformation along a clique path. Each round either
/// removes the vertex of the current clique (outside the target) whose bag
/// interval ends first, or, when removal would break the size floor or the
/// current clique is inside the target, adds from the anchor bag: a missing
/// target vertex if the bag has one, otherwise the vertex whose interval
/// reaches furthest. The anchor is the earliest bag still containing the
/// whole current clique, tracked as a running index. If the current clique
/// differs from the target and no move exists, there is no transformation.
inline SolveResult greedy_solve(const CliquePath& cp, const Clique& source, const Clique& target, int k,
                                const GreedyOptions& options = {}) {
    const auto start_time = std::chrono::steady_clock::now();
    SolveResult result;
    result.solver = SolverKind::chordal;
    result.stats.nodes = cp.bags.size();

    if (cp.bags.empty() || cp.lvalue.empty()) throw InternalError("greedy_solve needs a clique path with l/r values");
    if (source.empty() || target.empty()) throw InternalError("greedy_solve endpoints must be nonempty");
    if (k > source.size() || k > target.size()) throw InternalError("threshold exceeds an endpoint size");

    const auto& l = cp.lvalue;
    const auto& r = cp.rvalue;

    // Trim to the window between the source's earliest interval end and the
    // target's latest interval start; outside it no shortest transformation
    // ever moves. If the window inverts, both endpoints share one bag.
    int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
    for (int v : source) lo = std::min(lo, r[static_cast<std::size_t>(v)]);
    for (int v : target) hi = std::max(hi, l[static_cast<std::size_t>(v)]);
    if (lo > hi) lo = hi;
    auto in_bag = [&](int v, int i) { return l[static_cast<std::size_t>(v)] <= i && i <= r[static_cast<std::size_t>(v)]; };
    for (int v : source) {
        if (!in_bag(v, lo)) throw InternalError("source does not fit its anchor bag");
    }
    for (int v : target) {
        if (!in_bag(v, hi)) throw InternalError("target does not fit the final bag");
    }
    auto rhat = [&](int v) { return std::min(r[static_cast<std::size_t>(v)], hi); };

    // Reachability gate: a step sequence can cross from one bag to the next
    // only through their intersection, so a consecutive overlap below k cuts
    // the target region off. Without this gate the walk below would circle
    // inside the reachable region forever.
    for (int i = lo; i < hi; ++i) {
        if (!cp.bags[static_cast<std::size_t>(i)].intersects_at_least(cp.bags[static_cast<std::size_t>(i) + 1], k)) {
            result.yes = false;
            result.reason = "the clique path narrows below the threshold";
            result.stats.elapsed_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_time).count();
            return result;
        }
    }

    std::vector<char> in_cur(static_cast<std::size_t>(cp.n), 0), in_tgt(static_cast<std::size_t>(cp.n), 0);
    std::vector<int> cur = source.members();
    for (int v : cur) in_cur[static_cast<std::size_t>(v)] = 1;
    for (int v : target) in_tgt[static_cast<std::size_t>(v)] = 1;
    int shared = source.intersection_size(target);
    int anchor = lo;

    const bool prefer_low = options.tie_break == TieBreak::lowest_index;
    // (rank, vertex) comparison with the configured tie-break
    auto better = [&](int rank_a, int v_a, int rank_b, int v_b) {
        if (rank_a != rank_b) return rank_a < rank_b;
        return prefer_low ? v_a < v_b : v_a > v_b;
    };

    ReconfSequence seq;
    seq.rule = Rule::tar(k);
    if (options.want_sequence) seq.cliques.push_back(source);
    std::uint64_t steps = 0;
    const std::uint64_t step_limit = 2 * static_cast<std::uint64_t>(cp.n) + 2;

    while (!(static_cast<int>(cur.size()) == target.size() && shared == target.size())) {
        if (++steps > step_limit) throw InternalError("greedy walk exceeded the step limit");
        const bool inside_target = shared == static_cast<int>(cur.size());
        if (!inside_target && static_cast<int>(cur.size()) >= k + 1) {
            // remove the non-target vertex whose interval ends first
            std::size_t pick = cur.size();
            for (std::size_t i = 0; i < cur.size(); ++i) {
                if (in_tgt[static_cast<std::size_t>(cur[i])]) continue;
                if (pick == cur.size() || better(rhat(cur[i]), cur[i], rhat(cur[pick]), cur[pick])) pick = i;
            }
            if (pick == cur.size()) throw InternalError("no removable vertex despite cur not inside target");
            in_cur[static_cast<std::size_t>(cur[pick])] = 0;
            cur[pick] = cur.back();
            cur.pop_back();
            if (cur.empty()) {
                anchor = hi;  // only the additions toward the target remain
            } else {
                anchor = std::numeric_limits<int>::max();
                for (int v : cur) anchor = std::min(anchor, rhat(v));
            }
        } else {
            // add from the anchor bag: missing target vertices first, then
            // the vertex whose interval reaches furthest right
            int best_target = -1, best_other = -1;
            for (int w : cp.bags[static_cast<std::size_t>(anchor)]) {
                if (in_cur[static_cast<std::size_t>(w)]) continue;
                if (in_tgt[static_cast<std::size_t>(w)]) {
                    if (best_target == -1 || better(0, w, 0, best_target)) best_target = w;
                } else if (best_other == -1 || better(-rhat(w), w, -rhat(best_other), best_other)) {
                    best_other = w;
                }
            }
            const int w = best_target != -1 ? best_target : best_other;
            // the reachability gate above rules out exhausted anchor bags
            if (w == -1) throw InternalError("no admissible move on a feasible instance");
            cur.push_back(w);
            in_cur[static_cast<std::size_t>(w)] = 1;
            if (in_tgt[static_cast<std::size_t>(w)]) ++shared;
            anchor = std::min(anchor, rhat(w));
        }
        if (options.want_sequence) seq.cliques.push_back(Clique(cur));
    }

    result.yes = true;
    result.distance = steps;
    if (options.want_sequence) result.sequence = std::move(seq);
    result.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_time).count();
    return result;
}

struct ChordalOptions {
    TieBreak tie_break = TieBreak::lowest_index;
    bool want_sequence = true;
};

namespace detail {

// remove-everything-then-add-everything walk; shortest when the endpoints
// live in different components and the size floor is zero
inline ReconfSequence cross_component_sequence(const Clique& source, const Clique& target) {
    ReconfSequence seq;
    seq.rule = Rule::tar(0);
    seq.cliques.push_back(source);
    Clique cur = source;
    for (int v : source.members()) {
        cur = cur.without(v);
        seq.cliques.push_back(cur);
    }
    for (int v : target.members()) {
        cur = cur.with(v);
        seq.cliques.push_back(cur);
    }
    return seq;
}

}  // namespace detail

/// Exact shortest distances on chordal graphs: reduce to an interval
/// subgraph, lay its maximal cliques on a path, and walk the path greedily.
/// tj/ts instances are rewritten as tar instances (which exactly doubles
/// the distance) and their witnesses recovered by downsampling.
inline SolveResult solve_chordal(const RuleInstance& inst, const ChordalOptions& options = {}) {
    const auto start_time = std::chrono::steady_clock::now();

    std::optional<RuleInstance> reduced;
    if (inst.rule.kind == RuleKind::tar) {
        if (inst.source.size() < inst.rule.k || inst.target.size() < inst.rule.k) {
            return detail::no_result(SolverKind::chordal, "endpoint smaller than the threshold");
        }
        reduced = inst;
    } else {
        const ReductionOutcome outcome = inst.rule.kind == RuleKind::ts ? ts_to_tar(inst) : tj_to_tar(inst);
        if (outcome.kind == ReductionOutcome::Kind::immediate_no)
            return detail::no_result(SolverKind::chordal, outcome.reason);
        if (outcome.kind == ReductionOutcome::Kind::immediate_yes)
            return detail::trivial_yes(SolverKind::chordal, inst, options.want_sequence);
        reduced = *outcome.instance;
    }
    const int k = reduced->rule.k;

    if (inst.source == inst.target) {
        auto r = detail::trivial_yes(SolverKind::chordal, inst, options.want_sequence);
        if (inst.rule.kind != RuleKind::tar) r.tar_threshold = k;
        return r;
    }

    SolveResult tar_result;
    const IntervalReduction interval = reduce_to_interval(*reduced);
    if (interval.disconnected) {
        if (k >= 1) {
            tar_result = detail::no_result(SolverKind::chordal, "endpoints lie in different connected components");
        } else {
            tar_result.yes = true;
            tar_result.solver = SolverKind::chordal;
            tar_result.distance = static_cast<std::uint64_t>(reduced->source.size() + reduced->target.size());
            tar_result.sequence = detail::cross_component_sequence(reduced->source, reduced->target);
        }
    } else {
        CliquePath path = interval.path;
        compute_lr(path);
        GreedyOptions greedy_options{options.tie_break, true};
        tar_result = greedy_solve(path, interval.source_h, interval.target_h, k, greedy_options);
        if (tar_result.yes && tar_result.sequence) {
            // sequences over the induced subgraph relabel back verbatim
            for (Clique& c : tar_result.sequence->cliques) {
                std::vector<int> vs;
                vs.reserve(static_cast<std::size_t>(c.size()));
                for (int v : c) vs.push_back(interval.to_original[static_cast<std::size_t>(v)]);
                c = Clique(std::move(vs));
            }
        }
    }

    SolveResult result = std::move(tar_result);
    result.solver = SolverKind::chordal;
    if (inst.rule.kind != RuleKind::tar) {
        result.tar_threshold = k;
        if (result.yes) {
            if (!result.distance || *result.distance % 2 != 0)
                throw InternalError("tar distance for a swap rule must be even");
            result.distance = *result.distance / 2;
            if (result.sequence) {
                result.sequence = tar_sequence_to_swaps(*result.sequence, inst.rule.kind);
                if (result.sequence->length() != *result.distance)
                    throw InternalError("downsampled witness length disagrees with the halved distance");
            }
        }
    }
    if (!options.want_sequence) result.sequence.reset();
    result.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_time).count();
    return result;
}

}  // namespace reconf
