#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reconf/crosscheck.hpp"
#include "reconf/dispatch.hpp"
#include "reconf/generators.hpp"
#include "reconf/tree_decomposition.hpp"

namespace reconf::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
}

inline nlohmann::json sequence_json(const ReconfSequence& seq) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Clique& c : seq.cliques) {
        nlohmann::json clique = nlohmann::json::array();
        for (int v : c) clique.push_back(v + 1);
        arr.push_back(std::move(clique));
    }
    return arr;
}

inline nlohmann::json result_json(const SolveResult& result, const RuleInstance& inst) {
    nlohmann::json j;
    j["answer"] = result.yes ? "YES" : "NO";
    j["distance"] = result.distance ? nlohmann::json(*result.distance) : nlohmann::json(nullptr);
    j["rule"] = to_string(inst.rule.kind);
    j["k"] = inst.rule.kind == RuleKind::tar ? nlohmann::json(inst.rule.k) : nlohmann::json(nullptr);
    j["solver"] = to_string(result.solver);
    j["shortest"] = result.shortest;
    j["tar_threshold"] = result.tar_threshold ? nlohmann::json(*result.tar_threshold) : nlohmann::json(nullptr);
    j["reason"] = result.reason.empty() ? nlohmann::json(nullptr) : nlohmann::json(result.reason);
    j["sequence"] = result.sequence ? sequence_json(*result.sequence) : nlohmann::json(nullptr);
    j["stats"] = {{"nodes", result.stats.nodes}, {"edges", result.stats.edges}, {"elapsed_ms", result.stats.elapsed_ms}};
    return j;
}

inline void print_result_text(std::ostream& out, const SolveResult& result, const RuleInstance& inst) {
    out << "answer: " << (result.yes ? "YES" : "NO") << "\n";
    out << "distance: " << (result.distance ? std::to_string(*result.distance) : std::string("infinity")) << "\n";
    out << "rule: " << to_string(inst.rule.kind);
    if (inst.rule.kind == RuleKind::tar) out << " " << inst.rule.k;
    out << "\n";
    out << "solver: " << to_string(result.solver) << "\n";
    out << "shortest: " << (result.shortest ? "true" : "false") << "\n";
    if (result.tar_threshold) out << "tar-threshold: " << *result.tar_threshold << "\n";
    if (!result.reason.empty()) out << "reason: " << result.reason << "\n";
    if (result.sequence) {
        out << "sequence:\n";
        for (const Clique& c : result.sequence->cliques) out << serialize_clique_line(c) << "\n";
    }
}

}  // namespace detail

/// Runs the command-line interface against an argument vector. Exit code 0
/// means yes/ok, 1 means no/violation/discrepancy, 2 means an error.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"clique reconfiguration solver"};
    app.require_subcommand(1);

    // solve
    std::string solve_graph, solve_instance, solve_solver = "auto", solve_td;
    bool solve_json = false, solve_no_sequence = false;
    std::uint64_t solve_budget = 0;
    auto* solve_cmd = app.add_subcommand("solve", "decide reachability / shortest distance for an instance");
    solve_cmd->add_option("graph", solve_graph, "graph file")->required();
    solve_cmd->add_option("instance", solve_instance, "instance file")->required();
    solve_cmd->add_option("--solver", solve_solver, "exact|mcg|chordal|auto")->default_val("auto");
    solve_cmd->add_option("--td", solve_td, "tree decomposition file (routes the exact solver)");
    solve_cmd->add_option("--budget", solve_budget, "enumeration budget in cliques");
    solve_cmd->add_flag("--json", solve_json, "machine-readable output");
    solve_cmd->add_flag("--no-sequence", solve_no_sequence, "suppress the witness sequence");

    // check
    std::string check_graph, check_instance, check_sequence;
    auto* check_cmd = app.add_subcommand("check", "validate a reconfiguration sequence file");
    check_cmd->add_option("graph", check_graph, "graph file")->required();
    check_cmd->add_option("instance", check_instance, "instance file")->required();
    check_cmd->add_option("sequence", check_sequence, "sequence file, one clique per line")->required();

    // gen
    std::string gen_kind, gen_graph_out, gen_instance_out, gen_rule = "tar";
    int gen_n = 12, gen_attach = 4, gen_percent = 50, gen_rows = 3, gen_cols = 3;
    std::uint64_t gen_seed = 1;
    auto* gen_cmd = app.add_subcommand("gen", "generate a graph file and a matching instance file");
    gen_cmd->add_option("kind", gen_kind, "chordal|interval|gnp|grid")->required();
    gen_cmd->add_option("--graph-out", gen_graph_out, "output graph file")->required();
    gen_cmd->add_option("--instance-out", gen_instance_out, "output instance file")->required();
    gen_cmd->add_option("--n", gen_n, "vertex count (chordal, interval, gnp)");
    gen_cmd->add_option("--attach", gen_attach, "chordal: max attachment clique size");
    gen_cmd->add_option("--percent", gen_percent, "gnp: edge probability in percent");
    gen_cmd->add_option("--rows", gen_rows, "grid rows");
    gen_cmd->add_option("--cols", gen_cols, "grid cols");
    gen_cmd->add_option("--rule", gen_rule, "tar|tj|ts")->default_val("tar");
    gen_cmd->add_option("--seed", gen_seed, "random seed");

    // crosscheck
    long long cc_count = 500;
    std::uint64_t cc_seed = 1;
    int cc_n_min = 1, cc_n_max = 0;
    std::string cc_dump_prefix = "crosscheck-fail";
    auto* cc_cmd = app.add_subcommand("crosscheck", "run the solver cross-validation batteries");
    cc_cmd->add_option("--count", cc_count, "cases per battery");
    cc_cmd->add_option("--seed", cc_seed, "random seed");
    cc_cmd->add_option("--n-min", cc_n_min, "smallest generated vertex count");
    cc_cmd->add_option("--n-max", cc_n_max, "largest generated vertex count (0: per-battery default)");
    cc_cmd->add_option("--dump-prefix", cc_dump_prefix, "path prefix for failure reproducers");

    // CLI11 wants a mutable argv-style view
    std::vector<const char*> argv;
    argv.push_back("reconf");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends print through CLI11
            std::ostringstream help;
            const int code = app.exit(e, help, help);
            out << help.str();
            return code;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (solve_cmd->parsed()) {
            const Graph g = parse_graph(detail::read_file(solve_graph));
            const RuleInstance inst = parse_instance(detail::read_file(solve_instance), g);
            DispatchOptions options;
            const auto choice = solver_choice_from_string(solve_solver);
            if (!choice) {
                err << "error: unknown solver '" << solve_solver << "'\n";
                return 2;
            }
            options.solver = *choice;
            options.want_sequence = !solve_no_sequence;
            if (solve_budget > 0) {
                options.clique_budget = solve_budget;
                options.maximal_clique_budget = solve_budget;
            }
            TreeDecomposition td;
            if (!solve_td.empty()) {
                if (options.solver != SolverChoice::automatic && options.solver != SolverChoice::exhaustive) {
                    err << "error: --td applies only to the exact solver\n";
                    return 2;
                }
                td = parse_tree_decomposition(detail::read_file(solve_td));
                options.td = &td;
            }
            const SolveResult result = solve(inst, options);
            if (solve_json) {
                out << detail::result_json(result, inst).dump() << "\n";
            } else {
                detail::print_result_text(out, result, inst);
            }
            return result.yes ? 0 : 1;
        }

        if (check_cmd->parsed()) {
            const Graph g = parse_graph(detail::read_file(check_graph));
            const RuleInstance inst = parse_instance(detail::read_file(check_instance), g);
            const ReconfSequence seq = parse_sequence(detail::read_file(check_sequence), inst.rule, g);
            const SequenceCheck check = validate_sequence(inst, seq);
            if (check.ok) {
                out << "ok\n";
                return 0;
            }
            out << "violation at index " << check.index << ": " << check.reason << "\n";
            return 1;
        }

        if (gen_cmd->parsed()) {
            Graph g;
            if (gen_kind == "chordal") {
                g = gen_chordal(gen_n, gen_attach, gen_seed);
            } else if (gen_kind == "interval") {
                g = gen_interval(gen_n, gen_seed);
            } else if (gen_kind == "gnp") {
                g = gen_gnp(gen_n, gen_percent, gen_seed);
            } else if (gen_kind == "grid") {
                g = gen_grid(gen_rows, gen_cols);
            } else {
                err << "error: unknown generator kind '" << gen_kind << "'\n";
                return 2;
            }
            const auto kind = rule_kind_from_string(gen_rule);
            if (!kind) {
                err << "error: unknown rule '" << gen_rule << "'\n";
                return 2;
            }
            Rng rng(gen_seed ^ 0x9e3779b97f4a7c15ull);
            const RuleInstance inst = sample_instance(g, *kind, rng);
            detail::write_file(gen_graph_out, serialize_graph(g));
            detail::write_file(gen_instance_out, serialize_instance(inst));
            out << "wrote " << gen_graph_out << " and " << gen_instance_out << "\n";
            return 0;
        }

        if (cc_cmd->parsed()) {
            BatteryConfig config;
            config.count = cc_count;
            config.seed = cc_seed;
            config.n_min = cc_n_min;
            config.n_max = cc_n_max;
            std::vector<BatteryResult> reports;
            reports.push_back(battery_mcg_vs_exact(config));
            reports.push_back(battery_rule_identities(config));
            reports.push_back(battery_reduction_soundness(config));
            reports.push_back(battery_chordal_vs_exact(config));
            long long total = 0;
            int dumped = 0;
            for (const auto& battery : reports) {
                out << "battery " << battery.name << ": checked=" << battery.checked
                    << " yes=" << battery.yes_cases << " no=" << battery.no_cases;
                if (battery.name == "reduction-soundness") out << " shortcut-hits=" << battery.shortcut_hits;
                out << " discrepancies=" << battery.discrepancies.size() << "\n";
                total += static_cast<long long>(battery.discrepancies.size());
                for (const auto& d : battery.discrepancies) {
                    const std::string graph_path = cc_dump_prefix + "-" + battery.name + "-" + std::to_string(dumped) + ".gr";
                    const std::string inst_path = cc_dump_prefix + "-" + battery.name + "-" + std::to_string(dumped) + ".inst";
                    detail::write_file(graph_path, d.graph_text);
                    detail::write_file(inst_path, d.instance_text);
                    out << "  " << d.description << "\n    reproducer: " << graph_path << " " << inst_path << "\n";
                    ++dumped;
                }
            }
            out << "total discrepancies: " << total << "\n";
            return total == 0 ? 0 : 1;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace reconf::cli
