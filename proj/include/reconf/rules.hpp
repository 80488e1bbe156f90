#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reconf/graph.hpp"

namespace reconf {

enum class RuleKind { tar, tj, ts };

inline const char* to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::tar: return "tar";
        case RuleKind::tj: return "tj";
        case RuleKind::ts: return "ts";
    }
    return "?";
}

inline std::optional<RuleKind> rule_kind_from_string(std::string_view s) {
    if (s == "tar") return RuleKind::tar;
    if (s == "tj") return RuleKind::tj;
    if (s == "ts") return RuleKind::ts;
    return std::nullopt;
}

/// One of the three step rules. A step under tar(k) adds or removes a single
/// vertex while every clique keeps size >= k; a step under tj swaps one
/// vertex for any other; ts is tj restricted to swaps along an edge.
struct Rule {
    RuleKind kind = RuleKind::tar;
    int k = 0;  // threshold, meaningful for tar only

    static Rule tar(int k) { return Rule{RuleKind::tar, k}; }
    static Rule tj() { return Rule{RuleKind::tj, 0}; }
    static Rule ts() { return Rule{RuleKind::ts, 0}; }
};

/// A solve request: transform `source` into `target` inside `graph` under
/// `rule`. The graph is held by pointer and must outlive the instance.
struct RuleInstance {
    RuleInstance(const Graph& g, Clique source_clique, Clique target_clique, Rule r)
        : source(std::move(source_clique)), target(std::move(target_clique)), rule(r), graph_(&g) {
        if (!is_clique(g, source)) throw InputError("source set is not a clique");
        if (!is_clique(g, target)) throw InputError("target set is not a clique");
        if (rule.kind == RuleKind::tar && rule.k < 0) throw InputError("tar threshold must be nonnegative");
    }
    // the graph is referenced, not copied; a temporary would dangle
    RuleInstance(const Graph&& g, Clique source_clique, Clique target_clique, Rule r) = delete;

    const Graph& graph() const { return *graph_; }

    Clique source;
    Clique target;
    Rule rule;

   private:
    const Graph* graph_;
};

struct ReconfSequence {
    Rule rule;
    std::vector<Clique> cliques;

    /// Number of steps: one less than the number of cliques.
    std::size_t length() const { return cliques.empty() ? 0 : cliques.size() - 1; }
};

namespace detail {

// Adjacency check without re-validating that the arguments are cliques.
inline bool adjacent_unchecked(const Graph& g, Rule rule, const Clique& a, const Clique& b) {
    switch (rule.kind) {
        case RuleKind::tar:
            return a.size() >= rule.k && b.size() >= rule.k && a.sym_diff_size(b) == 1;
        case RuleKind::tj:
            return a.size() == b.size() && a.sym_diff_size(b) == 2;
        case RuleKind::ts: {
            if (a.size() != b.size() || a.sym_diff_size(b) != 2) return false;
            const VertexSet out = a.minus(b);
            const VertexSet in = b.minus(a);
            return g.adjacent(out.members()[0], in.members()[0]);
        }
    }
    return false;
}

}  // namespace detail

/// True iff one step of `rule` turns c1 into c2 (symmetric in c1, c2).
inline bool adjacent(const Graph& g, Rule rule, const Clique& c1, const Clique& c2) {
    if (!is_clique(g, c1) || !is_clique(g, c2)) throw InputError("adjacency is defined on cliques only");
    return detail::adjacent_unchecked(g, rule, c1, c2);
}

struct SequenceCheck {
    bool ok = true;
    std::size_t index = 0;  // index of the first offending clique
    std::string reason;
};

inline SequenceCheck fail_at(std::size_t index, std::string reason) {
    return SequenceCheck{false, index, std::move(reason)};
}

/// Checks that `seq` is a reconfiguration sequence for `inst`: it starts at
/// the source, ends at the target, every member is a clique meeting the
/// rule's size constraint, and consecutive members are rule-adjacent.
inline SequenceCheck validate_sequence(const RuleInstance& inst, const ReconfSequence& seq) {
    const Graph& g = inst.graph();
    if (seq.rule.kind != inst.rule.kind) return fail_at(0, "sequence rule differs from the instance rule");
    if (seq.rule.kind == RuleKind::tar && seq.rule.k != inst.rule.k)
        return fail_at(0, "sequence threshold differs from the instance threshold");
    if (seq.cliques.empty()) return fail_at(0, "sequence has no cliques");
    if (seq.cliques.front() != inst.source) return fail_at(0, "sequence does not start at the source clique");

    const int expected_size = inst.source.size();
    for (std::size_t i = 0; i < seq.cliques.size(); ++i) {
        const Clique& c = seq.cliques[i];
        for (int v : c) {
            if (!g.has_vertex(v)) return fail_at(i, "vertex " + std::to_string(v) + " out of range");
        }
        if (!is_clique(g, c)) return fail_at(i, "not a clique");
        if (inst.rule.kind == RuleKind::tar) {
            if (c.size() < inst.rule.k) return fail_at(i, "clique smaller than the threshold");
        } else if (c.size() != expected_size) {
            return fail_at(i, "clique size differs from the endpoint size");
        }
        if (i > 0 && !detail::adjacent_unchecked(g, inst.rule, seq.cliques[i - 1], c)) {
            return fail_at(i, std::string("not reachable from the previous clique under ") + to_string(inst.rule.kind));
        }
    }
    if (seq.cliques.back() != inst.target)
        return fail_at(seq.cliques.size() - 1, "sequence does not end at the target clique");
    return SequenceCheck{};
}

/// Greedily extends `c` to a maximal clique, always adding the lowest-indexed
/// vertex adjacent to every current member.
inline Clique maximal_extension(const Graph& g, const Clique& c) {
    if (!is_clique(g, c)) throw InputError("maximal_extension requires a clique");
    std::vector<int> current = c.members();
    // candidates: vertices adjacent to all current members
    std::vector<int> cands;
    if (current.empty()) {
        cands.resize(static_cast<std::size_t>(g.vertex_count()));
        for (int v = 0; v < g.vertex_count(); ++v) cands[static_cast<std::size_t>(v)] = v;
    } else {
        std::vector<int> count(static_cast<std::size_t>(g.vertex_count()), 0);
        for (int v : current) {
            for (int w : g.neighbors(v)) ++count[static_cast<std::size_t>(w)];
        }
        for (int w = 0; w < g.vertex_count(); ++w) {
            if (count[static_cast<std::size_t>(w)] == static_cast<int>(current.size()) && !c.contains(w)) {
                cands.push_back(w);
            }
        }
    }
    while (!cands.empty()) {
        const int next = cands.front();  // lowest index: candidate lists stay sorted
        current.push_back(next);
        std::vector<int> filtered;
        for (int w : cands) {
            if (w != next && g.adjacent(next, w)) filtered.push_back(w);
        }
        cands = std::move(filtered);
    }
    return Clique(std::move(current));
}

/// True iff no vertex outside `c` is adjacent to all of its members.
inline bool is_maximal_clique(const Graph& g, const Clique& c) {
    if (!is_clique(g, c)) throw InputError("maximality is defined on cliques only");
    if (c.empty()) return g.vertex_count() == 0;
    std::vector<int> count(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : c) {
        for (int w : g.neighbors(v)) ++count[static_cast<std::size_t>(w)];
    }
    for (int w = 0; w < g.vertex_count(); ++w) {
        if (!c.contains(w) && count[static_cast<std::size_t>(w)] == c.size()) return false;
    }
    return true;
}

/// Result of rewriting an instance from one rule to another. Some inputs are
/// decided on the spot: a tj/ts instance with unequal endpoint sizes is a no
/// by definition, and equal endpoints need no search at all.
struct ReductionOutcome {
    enum class Kind { reduced, immediate_no, immediate_yes };

    Kind kind = Kind::reduced;
    std::optional<RuleInstance> instance;
    std::string reason;  // set for immediate_no

    static ReductionOutcome no(std::string why) { return {Kind::immediate_no, std::nullopt, std::move(why)}; }
    static ReductionOutcome yes() { return {Kind::immediate_yes, std::nullopt, ""}; }
    static ReductionOutcome reduced_to(RuleInstance inst) { return {Kind::reduced, std::move(inst), ""}; }
};

/// ts -> tar with the same endpoints and threshold k = endpoint size. The
/// answers agree and the tar distance is exactly twice the ts distance.
inline ReductionOutcome ts_to_tar(const RuleInstance& inst) {
    if (inst.rule.kind != RuleKind::ts) throw InputError("ts_to_tar expects a ts instance");
    if (inst.source.size() != inst.target.size()) return ReductionOutcome::no("endpoint sizes differ");
    return ReductionOutcome::reduced_to(
        RuleInstance(inst.graph(), inst.source, inst.target, Rule::tar(inst.source.size())));
}

/// tj -> tar with the same endpoints and threshold k-1 where k is the
/// endpoint size. The answers agree and the tar distance is twice the tj
/// distance.
inline ReductionOutcome tj_to_tar(const RuleInstance& inst) {
    if (inst.rule.kind != RuleKind::tj) throw InputError("tj_to_tar expects a tj instance");
    if (inst.source.size() != inst.target.size()) return ReductionOutcome::no("endpoint sizes differ");
    if (inst.source.empty()) return ReductionOutcome::yes();  // both empty: nothing to move
    return ReductionOutcome::reduced_to(
        RuleInstance(inst.graph(), inst.source, inst.target, Rule::tar(inst.source.size() - 1)));
}

namespace detail {

inline Clique lowest_prefix(const Clique& c, int count) {
    std::vector<int> out(c.members().begin(), c.members().begin() + count);
    return Clique(std::move(out));
}

// Lowest-indexed vertex adjacent to every member of `c`, or -1 if none.
inline int lowest_common_neighbor(const Graph& g, const Clique& c) {
    if (c.empty()) return g.vertex_count() > 0 ? 0 : -1;
    std::vector<int> count(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : c) {
        for (int w : g.neighbors(v)) ++count[static_cast<std::size_t>(w)];
    }
    for (int w = 0; w < g.vertex_count(); ++w) {
        if (!c.contains(w) && count[static_cast<std::size_t>(w)] == c.size()) return w;
    }
    return -1;
}

}  // namespace detail

/// tar -> ts: shrink each endpoint to its k lowest-indexed vertices. The
/// yes/no answer is preserved; the distance is not claimed to be.
inline ReductionOutcome tar_to_ts(const RuleInstance& inst) {
    if (inst.rule.kind != RuleKind::tar) throw InputError("tar_to_ts expects a tar instance");
    const int k = inst.rule.k;
    if (inst.source.size() < k || inst.target.size() < k)
        return ReductionOutcome::no("endpoint smaller than the threshold");
    if (inst.source != inst.target) {
        for (const Clique* endpoint : {&inst.source, &inst.target}) {
            if (endpoint->size() == k && is_maximal_clique(inst.graph(), *endpoint)) {
                return ReductionOutcome::no("an endpoint is a maximal clique of exactly the threshold size");
            }
        }
    }
    return ReductionOutcome::reduced_to(RuleInstance(inst.graph(), detail::lowest_prefix(inst.source, k),
                                                     detail::lowest_prefix(inst.target, k), Rule::ts()));
}

/// tar -> tj. Endpoints larger than k are shrunk to their k+1 lowest
/// vertices; endpoints of size exactly k are grown by their lowest common
/// neighbor. If the endpoints differ and one of size exactly k is a maximal
/// clique, no step can ever leave it, so the answer is an immediate no.
inline ReductionOutcome tar_to_tj(const RuleInstance& inst) {
    if (inst.rule.kind != RuleKind::tar) throw InputError("tar_to_tj expects a tar instance");
    const Graph& g = inst.graph();
    const int k = inst.rule.k;
    if (inst.source.size() < k || inst.target.size() < k)
        return ReductionOutcome::no("endpoint smaller than the threshold");
    if (inst.source == inst.target) return ReductionOutcome::yes();
    for (const Clique* endpoint : {&inst.source, &inst.target}) {
        if (endpoint->size() == k && is_maximal_clique(g, *endpoint)) {
            return ReductionOutcome::no("an endpoint is a maximal clique of exactly the threshold size");
        }
    }
    auto rewrite = [&](const Clique& c) {
        if (c.size() >= k + 1) return detail::lowest_prefix(c, k + 1);
        const int grow = detail::lowest_common_neighbor(g, c);
        if (grow < 0) throw InternalError("non-maximal clique has no common neighbor");
        return c.with(grow);
    };
    return ReductionOutcome::reduced_to(RuleInstance(g, rewrite(inst.source), rewrite(inst.target), Rule::tj()));
}

/// Extracts a tj/ts sequence from a tar sequence whose clique sizes
/// alternate between the endpoint size and the adjacent level: keep every
/// other clique, then drop consecutive repeats.
inline ReconfSequence tar_sequence_to_swaps(const ReconfSequence& tar_seq, RuleKind kind) {
    if (tar_seq.cliques.size() % 2 == 0) {
        throw InternalError("tar sequence between equal-size endpoints must have even length");
    }
    ReconfSequence out;
    out.rule = (kind == RuleKind::tj) ? Rule::tj() : Rule::ts();
    for (std::size_t i = 0; i < tar_seq.cliques.size(); i += 2) {
        if (!out.cliques.empty() && out.cliques.back() == tar_seq.cliques[i]) continue;
        out.cliques.push_back(tar_seq.cliques[i]);
    }
    return out;
}

/// Parses the instance text format: `r <tar|tj|ts> [k]`, then `s <v...>`,
/// then `t <v...>` with 1-based vertices; `c ...` comments are ignored.
inline RuleInstance parse_instance(std::string_view text, const Graph& g) {
    const auto lines = detail::significant_lines(text);
    if (lines.size() != 3) throw ParseError("instance file must have exactly the lines r, s and t");

    const auto rline = detail::tokens(lines[0].text);
    if (rline.empty() || rline[0] != "r")
        throw ParseError("line " + std::to_string(lines[0].number) + ": expected 'r <tar|tj|ts> [k]'");
    if (rline.size() < 2) throw ParseError("line " + std::to_string(lines[0].number) + ": missing rule name");
    const auto kind = rule_kind_from_string(rline[1]);
    if (!kind) throw ParseError("line " + std::to_string(lines[0].number) + ": unknown rule '" + std::string(rline[1]) + "'");
    Rule rule;
    if (*kind == RuleKind::tar) {
        if (rline.size() != 3) throw ParseError("line " + std::to_string(lines[0].number) + ": tar requires a threshold k");
        const long long k = detail::parse_int(rline[2], lines[0].number, "threshold");
        if (k < 0) throw ParseError("line " + std::to_string(lines[0].number) + ": threshold must be nonnegative");
        if (k > 1'000'000'000) throw ParseError("line " + std::to_string(lines[0].number) + ": threshold out of supported range");
        rule = Rule::tar(static_cast<int>(k));
    } else {
        if (rline.size() != 2)
            throw ParseError("line " + std::to_string(lines[0].number) + ": rule " + std::string(rline[1]) + " takes no threshold");
        rule = (*kind == RuleKind::tj) ? Rule::tj() : Rule::ts();
    }

    auto parse_clique = [&](const detail::Line& line, std::string_view tag) {
        const auto toks = detail::tokens(line.text);
        if (toks.empty() || toks[0] != tag)
            throw ParseError("line " + std::to_string(line.number) + ": expected '" + std::string(tag) + " <vertices...>'");
        std::vector<int> vs;
        for (std::size_t i = 1; i < toks.size(); ++i) {
            const long long v = detail::parse_int(toks[i], line.number, "vertex");
            if (v < 1 || v > g.vertex_count())
                throw ParseError("line " + std::to_string(line.number) + ": vertex out of range 1.." +
                                 std::to_string(g.vertex_count()));
            vs.push_back(static_cast<int>(v - 1));
        }
        return Clique(std::move(vs));
    };

    return RuleInstance(g, parse_clique(lines[1], "s"), parse_clique(lines[2], "t"), rule);
}

inline std::string serialize_clique_line(const Clique& c) {
    if (c.empty()) return "-";
    std::string out;
    for (int v : c) {
        if (!out.empty()) out += ' ';
        out += std::to_string(v + 1);
    }
    return out;
}

inline std::string serialize_instance(const RuleInstance& inst) {
    std::string out = "r ";
    out += to_string(inst.rule.kind);
    if (inst.rule.kind == RuleKind::tar) out += " " + std::to_string(inst.rule.k);
    out += "\ns";
    for (int v : inst.source) out += " " + std::to_string(v + 1);
    out += "\nt";
    for (int v : inst.target) out += " " + std::to_string(v + 1);
    out += "\n";
    return out;
}

/// Sequence file: one clique per line as 1-based vertices; a single `-`
/// denotes the empty clique.
inline ReconfSequence parse_sequence(std::string_view text, Rule rule, const Graph& g) {
    ReconfSequence seq;
    seq.rule = rule;
    for (const auto& line : detail::significant_lines(text)) {
        if (line.text == "-") {
            seq.cliques.emplace_back();
            continue;
        }
        std::vector<int> vs;
        for (const auto& tok : detail::tokens(line.text)) {
            const long long v = detail::parse_int(tok, line.number, "vertex");
            if (v < 1 || v > g.vertex_count())
                throw ParseError("line " + std::to_string(line.number) + ": vertex out of range 1.." +
                                 std::to_string(g.vertex_count()));
            vs.push_back(static_cast<int>(v - 1));
        }
        seq.cliques.emplace_back(std::move(vs));
    }
    return seq;
}

inline std::string serialize_sequence(const ReconfSequence& seq) {
    std::string out;
    for (const Clique& c : seq.cliques) {
        out += serialize_clique_line(c);
        out += '\n';
    }
    return out;
}

}  // namespace reconf
