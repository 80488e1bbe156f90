#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "reconf/chordal.hpp"
#include "reconf/exhaustive.hpp"
#include "reconf/generators.hpp"
#include "reconf/mcg.hpp"

namespace reconf {

/// A reproducer for one disagreement between two solve routes.
struct Discrepancy {
    std::string description;
    std::string graph_text;
    std::string instance_text;
};

struct BatteryResult {
    std::string name;
    long long checked = 0;
    long long yes_cases = 0;
    long long no_cases = 0;
    long long shortcut_hits = 0;  // reduction battery: immediate-no cases taken
    std::vector<Discrepancy> discrepancies;

    bool ok() const { return discrepancies.empty(); }
};

struct BatteryConfig {
    long long count = 100;
    std::uint64_t seed = 1;
    int pairs_per_graph = 3;
    int n_min = 1;
    int n_max = 0;  // 0: keep each battery's own default upper bound

    int pick_n(Rng& rng, int default_max) const {
        const int hi = std::max(n_max > 0 ? n_max : default_max, n_min);
        return n_min + rng.below(hi - n_min + 1);
    }
};

namespace detail {

inline std::string format_distance(const std::optional<std::uint64_t>& d) {
    return d ? std::to_string(*d) : std::string("infinity");
}

struct MinimizedCase {
    Graph graph;
    Clique source, target;
    Rule rule;
};

// Shrinks a failing case by deleting vertices outside the endpoint cliques
// while the disagreement persists.
template <typename Test>
inline MinimizedCase minimize_case(const Graph& g, const RuleInstance& inst, Test&& still_fails) {
    MinimizedCase best{g, inst.source, inst.target, inst.rule};
    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (int v = 0; v < best.graph.vertex_count(); ++v) {
            if (best.source.contains(v) || best.target.contains(v)) continue;
            std::vector<int> keep;
            for (int u = 0; u < best.graph.vertex_count(); ++u) {
                if (u != v) keep.push_back(u);
            }
            auto sub = induced_subgraph(best.graph, VertexSet(keep));
            auto relabel = [&](const Clique& c) {
                std::vector<int> vs;
                for (int u : c) vs.push_back(u < v ? u : u - 1);
                return Clique(std::move(vs));
            };
            const Clique s2 = relabel(best.source), t2 = relabel(best.target);
            try {
                RuleInstance candidate(sub.graph, s2, t2, best.rule);
                if (still_fails(candidate)) {
                    best.graph = std::move(sub.graph);
                    best.source = s2;
                    best.target = t2;
                    shrunk = true;
                    break;
                }
            } catch (const Error&) {
                // removal broke the case setup; keep the vertex
            }
        }
    }
    return best;
}

template <typename Test>
inline void record_discrepancy(BatteryResult& battery, const Graph& g, const RuleInstance& inst, std::string what,
                               Test&& still_fails) {
    const MinimizedCase small = minimize_case(g, inst, still_fails);
    Discrepancy d;
    d.description = std::move(what);
    d.graph_text = serialize_graph(small.graph);
    d.instance_text = serialize_instance(RuleInstance(small.graph, small.source, small.target, small.rule));
    battery.discrepancies.push_back(std::move(d));
}

inline bool sequence_is_contiguous(const ReconfSequence& seq) {
    // every vertex's membership must form one index interval: each vertex is
    // added at most once and removed at most once
    std::vector<int> first, last, count;
    int bound = 0;
    for (const Clique& c : seq.cliques) {
        if (!c.empty()) bound = std::max(bound, c.members().back() + 1);
    }
    first.assign(static_cast<std::size_t>(bound), -1);
    last.assign(static_cast<std::size_t>(bound), -1);
    count.assign(static_cast<std::size_t>(bound), 0);
    for (std::size_t i = 0; i < seq.cliques.size(); ++i) {
        for (int v : seq.cliques[i]) {
            if (first[static_cast<std::size_t>(v)] < 0) first[static_cast<std::size_t>(v)] = static_cast<int>(i);
            last[static_cast<std::size_t>(v)] = static_cast<int>(i);
            ++count[static_cast<std::size_t>(v)];
        }
    }
    for (int v = 0; v < bound; ++v) {
        if (count[static_cast<std::size_t>(v)] > 0 &&
            count[static_cast<std::size_t>(v)] != last[static_cast<std::size_t>(v)] - first[static_cast<std::size_t>(v)] + 1) {
            return false;
        }
    }
    return true;
}

}  // namespace detail

/// Decision agreement between maximal-clique-graph reachability and the
/// exhaustive oracle on random graphs, over random endpoint pairs and every
/// feasible threshold.
inline BatteryResult battery_mcg_vs_exact(const BatteryConfig& config) {
    BatteryResult battery;
    battery.name = "mcg-vs-exact";
    Rng rng(config.seed);
    const int percents[] = {30, 50, 70};
    for (long long i = 0; i < config.count; ++i) {
        const int n = config.pick_n(rng, 10);
        const Graph g = gen_gnp(n, percents[i % 3], rng.next());
        for (int pair = 0; pair < config.pairs_per_graph; ++pair) {
            const Clique s = random_clique(g, rng, 6);
            const Clique t = random_clique(g, rng, 6);
            for (int k = 0; k <= std::min(s.size(), t.size()); ++k) {
                const RuleInstance inst(g, s, t, Rule::tar(k));
                auto fails = [](const RuleInstance& candidate) {
                    return solve_mcg(candidate).yes != solve_exact(candidate).yes;
                };
                ++battery.checked;
                const SolveResult fast = solve_mcg(inst);
                const SolveResult oracle = solve_exact(inst);
                (oracle.yes ? battery.yes_cases : battery.no_cases) += 1;
                if (fast.yes != oracle.yes) {
                    detail::record_discrepancy(battery, g, inst,
                                               std::string("mcg says ") + (fast.yes ? "yes" : "no") +
                                                   " but the oracle says " + (oracle.yes ? "yes" : "no"),
                                               fails);
                } else if (fast.yes && fast.sequence) {
                    const auto check = validate_sequence(inst, *fast.sequence);
                    if (!check.ok) {
                        detail::record_discrepancy(battery, g, inst, "mcg witness fails validation: " + check.reason,
                                                   fails);
                    }
                }
            }
        }
    }
    return battery;
}

/// Distance agreement between the chordal pipeline and the exhaustive
/// oracle, infinite distances included.
inline BatteryResult battery_chordal_vs_exact(const BatteryConfig& config,
                                              TieBreak tie_break = TieBreak::lowest_index) {
    BatteryResult battery;
    battery.name = "chordal-vs-exact";
    Rng rng(config.seed);
    for (long long i = 0; i < config.count; ++i) {
        const int n = config.pick_n(rng, 12);
        const Graph g = gen_chordal(n, 1 + rng.below(4), rng.next());
        for (int pair = 0; pair < config.pairs_per_graph; ++pair) {
            Clique s, t;
            if (pair == 0 && g.vertex_count() > 0) {
                // bias one pair toward maximal endpoints, which produce most
                // of the infinite distances
                s = maximal_extension(g, Clique{rng.below(g.vertex_count())});
                t = random_clique(g, rng, 6);
            } else {
                s = random_clique(g, rng, 6);
                t = random_clique(g, rng, 6);
            }
            for (int k = 0; k <= std::min(s.size(), t.size()); ++k) {
                const RuleInstance inst(g, s, t, Rule::tar(k));
                ChordalOptions chordal_options;
                chordal_options.tie_break = tie_break;
                auto fails = [&chordal_options](const RuleInstance& candidate) {
                    return solve_chordal(candidate, chordal_options).distance != solve_exact(candidate).distance;
                };
                ++battery.checked;
                const SolveResult fast = solve_chordal(inst, chordal_options);
                const SolveResult oracle = solve_exact(inst);
                (oracle.yes ? battery.yes_cases : battery.no_cases) += 1;
                if (fast.distance != oracle.distance) {
                    detail::record_discrepancy(battery, g, inst,
                                               "chordal distance " + detail::format_distance(fast.distance) +
                                                   " but oracle distance " + detail::format_distance(oracle.distance),
                                               fails);
                    continue;
                }
                if (fast.yes && fast.sequence) {
                    const auto check = validate_sequence(inst, *fast.sequence);
                    if (!check.ok) {
                        detail::record_discrepancy(battery, g, inst, "chordal witness fails validation: " + check.reason,
                                                   fails);
                    } else if (fast.sequence->length() != *fast.distance) {
                        detail::record_discrepancy(battery, g, inst, "chordal witness length differs from the distance",
                                                   fails);
                    }
                }
            }
        }
    }
    return battery;
}

/// Distance identities between the swap rules and their threshold
/// counterparts: ts distance is half the tar distance at the endpoint size,
/// tj distance is half the tar distance one level below.
inline BatteryResult battery_rule_identities(const BatteryConfig& config) {
    BatteryResult battery;
    battery.name = "rule-identities";
    Rng rng(config.seed);
    for (long long i = 0; i < config.count; ++i) {
        const int n = std::max(2, config.pick_n(rng, 9));
        const Graph g = (i % 2 == 0) ? gen_gnp(n, 30 + 10 * static_cast<int>(i % 5), rng.next())
                                     : gen_chordal(n, 1 + rng.below(3), rng.next());
        Rng local(rng.next());
        const Clique s = random_clique(g, local, 5);
        if (s.empty()) continue;
        const Clique t = random_clique_of_size(g, local, s.size()).value_or(s);
        const int k = s.size();
        ++battery.checked;

        const auto d_ts = solve_exact(RuleInstance(g, s, t, Rule::ts())).distance;
        const auto d_tar = solve_exact(RuleInstance(g, s, t, Rule::tar(k))).distance;
        auto fails_ts = [](const RuleInstance& candidate) {
            const auto lhs = solve_exact(candidate).distance;
            const auto rhs =
                solve_exact(RuleInstance(candidate.graph(), candidate.source, candidate.target,
                                         Rule::tar(candidate.source.size())))
                    .distance;
            if (!lhs && !rhs) return false;
            return !lhs || !rhs || *rhs != 2 * *lhs;
        };
        const bool ts_match = (!d_ts && !d_tar) || (d_ts && d_tar && *d_tar == 2 * *d_ts);
        (d_tar ? battery.yes_cases : battery.no_cases) += 1;
        if (!ts_match) {
            detail::record_discrepancy(battery, g, RuleInstance(g, s, t, Rule::ts()),
                                       "ts distance " + detail::format_distance(d_ts) + " vs tar distance " +
                                           detail::format_distance(d_tar),
                                       fails_ts);
        }

        const auto d_tj = solve_exact(RuleInstance(g, s, t, Rule::tj())).distance;
        const auto d_tar_low = solve_exact(RuleInstance(g, s, t, Rule::tar(k - 1))).distance;
        auto fails_tj = [](const RuleInstance& candidate) {
            const auto lhs = solve_exact(candidate).distance;
            const auto rhs =
                solve_exact(RuleInstance(candidate.graph(), candidate.source, candidate.target,
                                         Rule::tar(candidate.source.size() - 1)))
                    .distance;
            if (!lhs && !rhs) return false;
            return !lhs || !rhs || *rhs != 2 * *lhs;
        };
        const bool tj_match = (!d_tj && !d_tar_low) || (d_tj && d_tar_low && *d_tar_low == 2 * *d_tj);
        if (!tj_match) {
            detail::record_discrepancy(battery, g, RuleInstance(g, s, t, Rule::tj()),
                                       "tj distance " + detail::format_distance(d_tj) + " vs lowered tar distance " +
                                           detail::format_distance(d_tar_low),
                                       fails_tj);
        }
    }
    return battery;
}

/// The instance rewrites preserve the oracle's yes/no answer, including the
/// immediate no taken when an endpoint is a maximal clique of exactly the
/// threshold size.
inline BatteryResult battery_reduction_soundness(const BatteryConfig& config) {
    BatteryResult battery;
    battery.name = "reduction-soundness";
    Rng rng(config.seed);
    for (long long i = 0; i < config.count; ++i) {
        const int n = std::max(2, config.pick_n(rng, 9));
        const Graph g = (i % 2 == 0) ? gen_gnp(n, 30 + 10 * static_cast<int>(i % 5), rng.next())
                                     : gen_chordal(n, 1 + rng.below(3), rng.next());
        Rng local(rng.next());
        Clique s, t;
        int k = 0;
        if (i % 3 == 0 && g.vertex_count() > 0) {
            // force candidates for the maximal-endpoint short circuit
            s = maximal_extension(g, Clique{local.below(g.vertex_count())});
            k = s.size();
            t = random_clique_of_size(g, local, k).value_or(s);
        } else {
            s = random_clique(g, local, 5);
            t = random_clique(g, local, 5);
            k = local.below(std::min(s.size(), t.size()) + 1);
        }
        const RuleInstance inst(g, s, t, Rule::tar(k));
        ++battery.checked;
        const bool oracle_yes = solve_exact(inst).yes;
        (oracle_yes ? battery.yes_cases : battery.no_cases) += 1;

        auto answer_from = [](const ReductionOutcome& outcome) -> std::optional<bool> {
            switch (outcome.kind) {
                case ReductionOutcome::Kind::immediate_no: return false;
                case ReductionOutcome::Kind::immediate_yes: return true;
                case ReductionOutcome::Kind::reduced: return std::nullopt;
            }
            return std::nullopt;
        };

        const ReductionOutcome to_ts = tar_to_ts(inst);
        const bool ts_yes = answer_from(to_ts).value_or(to_ts.instance ? solve_exact(*to_ts.instance).yes : false);
        auto fails_ts = [](const RuleInstance& candidate) {
            const ReductionOutcome red = tar_to_ts(candidate);
            bool got = false;
            if (red.kind == ReductionOutcome::Kind::reduced)
                got = solve_exact(*red.instance).yes;
            else
                got = red.kind == ReductionOutcome::Kind::immediate_yes;
            return got != solve_exact(candidate).yes;
        };
        if (ts_yes != oracle_yes) {
            detail::record_discrepancy(battery, g, inst,
                                       std::string("tar->ts answer ") + (ts_yes ? "yes" : "no") + " but oracle " +
                                           (oracle_yes ? "yes" : "no"),
                                       fails_ts);
        }

        const ReductionOutcome to_tj = tar_to_tj(inst);
        if (to_tj.kind == ReductionOutcome::Kind::immediate_no && to_tj.reason.find("maximal") != std::string::npos) {
            ++battery.shortcut_hits;
        }
        const bool tj_yes = answer_from(to_tj).value_or(to_tj.instance ? solve_exact(*to_tj.instance).yes : false);
        auto fails_tj = [](const RuleInstance& candidate) {
            const ReductionOutcome red = tar_to_tj(candidate);
            bool got = false;
            if (red.kind == ReductionOutcome::Kind::reduced)
                got = solve_exact(*red.instance).yes;
            else
                got = red.kind == ReductionOutcome::Kind::immediate_yes;
            return got != solve_exact(candidate).yes;
        };
        if (tj_yes != oracle_yes) {
            detail::record_discrepancy(battery, g, inst,
                                       std::string("tar->tj answer ") + (tj_yes ? "yes" : "no") + " but oracle " +
                                           (oracle_yes ? "yes" : "no"),
                                       fails_tj);
        }
    }
    return battery;
}

/// Restricting the exhaustive search to cliques of the two sizes k and k+1
/// must not change any distance between equal-size-k endpoints.
inline BatteryResult battery_alternating_normal_form(const BatteryConfig& config) {
    BatteryResult battery;
    battery.name = "alternating-normal-form";
    Rng rng(config.seed);
    for (long long i = 0; i < config.count; ++i) {
        const int n = std::max(2, config.pick_n(rng, 9));
        const Graph g = (i % 2 == 0) ? gen_gnp(n, 30 + 10 * static_cast<int>(i % 5), rng.next())
                                     : gen_chordal(n, 1 + rng.below(3), rng.next());
        Rng local(rng.next());
        const Clique s = random_clique(g, local, 5);
        if (s.empty()) continue;
        const Clique t = random_clique_of_size(g, local, s.size()).value_or(s);
        const int k = s.size();
        const RuleInstance inst(g, s, t, Rule::tar(k));
        ++battery.checked;

        SolveOptions restricted;
        restricted.max_clique_size = k + 1;
        const auto narrow = solve_exact(inst, restricted).distance;
        const auto full = solve_exact(inst).distance;
        (full ? battery.yes_cases : battery.no_cases) += 1;
        if (narrow != full) {
            auto fails = [](const RuleInstance& candidate) {
                SolveOptions o;
                o.max_clique_size = candidate.rule.k + 1;
                return solve_exact(candidate, o).distance != solve_exact(candidate).distance;
            };
            detail::record_discrepancy(battery, g, inst,
                                       "size-restricted distance " + detail::format_distance(narrow) +
                                           " vs unrestricted " + detail::format_distance(full),
                                       fails);
        }
    }
    return battery;
}

/// Every sequence any solver returns must validate; greedy sequences must
/// additionally visit each vertex over one contiguous index interval.
inline BatteryResult battery_sequence_properties(const BatteryConfig& config) {
    BatteryResult battery;
    battery.name = "sequence-properties";
    Rng rng(config.seed);
    const RuleKind kinds[] = {RuleKind::tar, RuleKind::tj, RuleKind::ts};
    for (long long i = 0; i < config.count; ++i) {
        const int n = std::max(2, config.pick_n(rng, 10));
        const bool chordal_case = i % 2 == 1;
        const Graph g = chordal_case ? gen_chordal(n, 1 + rng.below(3), rng.next()) : gen_gnp(n, 40, rng.next());
        Rng local(rng.next());
        const RuleInstance inst = sample_instance(g, kinds[i % 3], local);
        ++battery.checked;

        auto check_result = [&](const SolveResult& result, const char* solver) {
            if (!result.yes) {
                ++battery.no_cases;
                if (result.sequence) {
                    detail::record_discrepancy(battery, g, inst, std::string(solver) + " returned a sequence on a no",
                                               [](const RuleInstance&) { return false; });
                }
                return;
            }
            ++battery.yes_cases;
            if (!result.sequence) return;
            const auto check = validate_sequence(inst, *result.sequence);
            if (!check.ok) {
                detail::record_discrepancy(battery, g, inst,
                                           std::string(solver) + " sequence invalid at index " +
                                               std::to_string(check.index) + ": " + check.reason,
                                           [](const RuleInstance&) { return false; });
            }
            if (result.shortest && result.sequence->length() != *result.distance) {
                detail::record_discrepancy(battery, g, inst,
                                           std::string(solver) + " sequence length differs from its distance",
                                           [](const RuleInstance&) { return false; });
            }
        };

        check_result(solve_exact(inst), "exhaustive");
        check_result(solve_mcg(inst), "mcg");
        if (chordal_case) {
            const SolveResult greedy = solve_chordal(inst);
            check_result(greedy, "chordal");
            if (greedy.yes && greedy.sequence && !detail::sequence_is_contiguous(*greedy.sequence)) {
                detail::record_discrepancy(battery, g, inst, "greedy sequence revisits a vertex",
                                           [](const RuleInstance&) { return false; });
            }
        }
    }
    return battery;
}

/// When the union of the endpoints is itself a clique and the threshold
/// allows the smaller endpoint, the distance is exactly the symmetric
/// difference size.
inline BatteryResult battery_within_clique_distance(const BatteryConfig& config) {
    BatteryResult battery;
    battery.name = "within-clique-distance";
    Rng rng(config.seed);
    for (long long i = 0; i < config.count; ++i) {
        const int n = std::max(2, config.pick_n(rng, 9));
        const Graph g = (i % 2 == 0) ? gen_gnp(n, 50, rng.next()) : gen_chordal(n, 1 + rng.below(4), rng.next());
        Rng local(rng.next());
        const Clique base = random_clique(g, local, 6);
        std::vector<int> sv, tv;
        for (int v : base) {
            if (!local.one_in(3)) sv.push_back(v);
            if (!local.one_in(3)) tv.push_back(v);
        }
        const Clique s(std::move(sv)), t(std::move(tv));
        const int k = local.below(std::min(s.size(), t.size()) + 1);
        const RuleInstance inst(g, s, t, Rule::tar(k));
        ++battery.checked;
        const auto d = solve_exact(inst).distance;
        ++battery.yes_cases;
        if (!d || static_cast<int>(*d) != s.sym_diff_size(t)) {
            auto fails = [](const RuleInstance& candidate) {
                const auto got = solve_exact(candidate).distance;
                return !got || static_cast<int>(*got) != candidate.source.sym_diff_size(candidate.target);
            };
            detail::record_discrepancy(battery, g, inst,
                                       "distance " + detail::format_distance(d) + " but symmetric difference is " +
                                           std::to_string(s.sym_diff_size(t)),
                                       fails);
        }
    }
    return battery;
}

}  // namespace reconf
