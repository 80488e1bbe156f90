#pragma once

#include <optional>

#include "reconf/chordal.hpp"
#include "reconf/exhaustive.hpp"
#include "reconf/mcg.hpp"
#include "reconf/tree_decomposition.hpp"

namespace reconf {

enum class SolverChoice { automatic, exhaustive, mcg, chordal };

inline std::optional<SolverChoice> solver_choice_from_string(std::string_view s) {
    if (s == "auto") return SolverChoice::automatic;
    if (s == "exact") return SolverChoice::exhaustive;
    if (s == "mcg") return SolverChoice::mcg;
    if (s == "chordal") return SolverChoice::chordal;
    return std::nullopt;
}

struct DispatchOptions {
    SolverChoice solver = SolverChoice::automatic;
    std::uint64_t clique_budget = kDefaultCliqueBudget;
    std::uint64_t maximal_clique_budget = kDefaultMaximalCliqueBudget;
    bool want_sequence = true;
    const TreeDecomposition* td = nullptr;  // routes the exhaustive solver through bag-local enumeration
};

/// Runs one solver on the instance. In automatic mode: the chordal pipeline
/// when the graph is chordal, otherwise maximal-clique-graph reachability
/// when the maximal cliques fit the budget, otherwise the exhaustive search.
inline SolveResult solve(const RuleInstance& inst, const DispatchOptions& options = {}) {
    auto run_exact = [&]() {
        SolveOptions o;
        o.budget = options.clique_budget;
        o.want_sequence = options.want_sequence;
        if (options.td != nullptr) {
            int min_size = 0;
            if (inst.rule.kind == RuleKind::tar) {
                min_size = inst.rule.k;
            } else {
                min_size = std::min(inst.source.size(), inst.target.size());
            }
            const auto cliques = enumerate_cliques_from_td(inst.graph(), *options.td, min_size, options.clique_budget);
            return solve_exact(inst, o, &cliques);
        }
        return solve_exact(inst, o);
    };
    auto run_mcg = [&]() {
        McgOptions o;
        o.budget = options.maximal_clique_budget;
        o.want_sequence = options.want_sequence;
        return solve_mcg(inst, o);
    };
    auto run_chordal = [&]() {
        ChordalOptions o;
        o.want_sequence = options.want_sequence;
        return solve_chordal(inst, o);
    };

    switch (options.solver) {
        case SolverChoice::exhaustive: return run_exact();
        case SolverChoice::mcg: return run_mcg();
        case SolverChoice::chordal: return run_chordal();
        case SolverChoice::automatic: break;
    }
    if (options.td != nullptr) return run_exact();
    if (check_chordal(inst.graph()).chordal) return run_chordal();
    try {
        return run_mcg();
    } catch (const ResourceError&) {
        return run_exact();
    }
}

}  // namespace reconf
