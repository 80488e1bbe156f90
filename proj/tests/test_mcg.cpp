#include <doctest.h>

#include "reconf/crosscheck.hpp"
#include "reconf/exhaustive.hpp"
#include "reconf/generators.hpp"
#include "reconf/mcg.hpp"
#include "test_helpers.hpp"

using namespace reconf;
using namespace reconf::testing;

TEST_SUITE_BEGIN("mcg");

TEST_CASE("maximal clique enumeration on the named graphs") {
    CHECK(enumerate_maximal_cliques(diamond()).cliques == std::vector<Clique>{{0, 1, 2}, {0, 1, 3}});
    CHECK(enumerate_maximal_cliques(path4()).cliques == std::vector<Clique>{{0, 1}, {1, 2}, {2, 3}});
    CHECK(enumerate_maximal_cliques(triangle()).cliques == std::vector<Clique>{{0, 1, 2}});
    const Graph isolated(3, {});
    CHECK(enumerate_maximal_cliques(isolated).cliques == std::vector<Clique>{{0}, {1}, {2}});
}

TEST_CASE("maximal clique enumeration matches a brute-force scan") {
    Rng rng(61);
    for (int round = 0; round < 25; ++round) {
        const int n = 1 + rng.below(9);
        const Graph g = gen_gnp(n, 50, rng.next());
        std::vector<Clique> brute;
        for (const Clique& c : enumerate_cliques(g, 1)) {
            if (is_maximal_clique(g, c)) brute.push_back(c);
        }
        CHECK(enumerate_maximal_cliques(g).cliques == brute);
    }
}

TEST_CASE("maximal clique budget failure suggests the bottleneck") {
    const Graph g = complement(gen_grid(4, 4));  // complements of sparse graphs are clique-heavy
    CHECK_THROWS_AS(enumerate_maximal_cliques(g, 3), ResourceError);
}

TEST_CASE("intersection graph construction") {
    SUBCASE("diamond") {
        const auto ms = enumerate_maximal_cliques(diamond());
        CHECK(build_mcg(ms, 2).edge_count == 1);  // the two triangles share {0,1}
        CHECK(build_mcg(ms, 3).edge_count == 0);
        CHECK(build_mcg(ms, 0).edge_count == 1);
    }
    SUBCASE("path cliques chain with single-vertex overlaps") {
        const auto ms = enumerate_maximal_cliques(path4());
        const auto mcg = build_mcg(ms, 1);
        CHECK(mcg.edge_count == 2);
        CHECK(mcg.adj[0] == std::vector<int>{1});
        CHECK(mcg.adj[1] == std::vector<int>{0, 2});
    }
    SUBCASE("edges match the naive intersection predicate") {
        Rng rng(67);
        for (int round = 0; round < 20; ++round) {
            const Graph g = gen_gnp(2 + rng.below(8), 50, rng.next());
            const auto ms = enumerate_maximal_cliques(g);
            for (int k = 0; k <= 4; ++k) {
                const auto mcg = build_mcg(ms, k);
                for (int i = 0; i < ms.size(); ++i) {
                    for (int j = i + 1; j < ms.size(); ++j) {
                        const bool joined =
                            std::find(mcg.adj[static_cast<std::size_t>(i)].begin(),
                                      mcg.adj[static_cast<std::size_t>(i)].end(), j) !=
                            mcg.adj[static_cast<std::size_t>(i)].end();
                        CHECK(joined == (ms.cliques[static_cast<std::size_t>(i)].intersection_size(
                                             ms.cliques[static_cast<std::size_t>(j)]) >= k));
                    }
                }
            }
        }
    }
}

TEST_CASE("solve_mcg on the documented instances") {
    SUBCASE("diamond opposite pairs can trade at threshold two") {
        const Graph d = diamond();
        const RuleInstance inst(d, {0, 2}, {1, 3}, Rule::tar(2));
        const auto result = solve_mcg(inst);
        REQUIRE(result.yes);
        CHECK_FALSE(result.shortest);
        REQUIRE(result.sequence.has_value());
        CHECK(validate_sequence(inst, *result.sequence).ok);
        CHECK(solve_exact(inst).yes);
    }
    SUBCASE("diamond triangles are stuck at threshold three") {
        const Graph d = diamond();
        const RuleInstance inst(d, {0, 1, 2}, {0, 1, 3}, Rule::tar(3));
        CHECK_FALSE(solve_mcg(inst).yes);
        CHECK_FALSE(solve_exact(inst).yes);
    }
    SUBCASE("within one maximal clique the walk is trivial") {
        const Graph k3 = triangle();
        const RuleInstance inst(k3, {0}, {1, 2}, Rule::tar(1));
        const auto result = solve_mcg(inst);
        REQUIRE(result.yes);
        CHECK(validate_sequence(inst, *result.sequence).ok);
    }
}

TEST_CASE("materialize_sequence produces validating walks") {
    SUBCASE("diamond hop through the shared pair") {
        const Graph d = diamond();
        const auto seq = materialize_sequence({{0, 1, 2}, {0, 1, 3}}, {0, 2}, {1, 3}, 2);
        CHECK(validate_sequence(RuleInstance(d, {0, 2}, {1, 3}, Rule::tar(2)), seq).ok);
    }
    SUBCASE("single clique with equal endpoints is a zero-length walk") {
        const auto seq = materialize_sequence({{0, 1, 2}}, {0, 2}, {0, 2}, 2);
        CHECK(seq.length() == 0);
        CHECK(seq.cliques.front() == Clique{0, 2});
    }
    SUBCASE("path chain at threshold one") {
        const Graph p4 = path4();
        const auto seq = materialize_sequence({{0, 1}, {1, 2}, {2, 3}}, {0, 1}, {2, 3}, 1);
        CHECK(validate_sequence(RuleInstance(p4, {0, 1}, {2, 3}, Rule::tar(1)), seq).ok);
    }
}

TEST_CASE("mcg answers match the oracle over random graphs and all thresholds") {
    BatteryConfig config;
    config.count = 120;
    config.seed = 71;
    config.pairs_per_graph = 2;
    const auto battery = battery_mcg_vs_exact(config);
    CHECK(battery.checked > 100);
    CHECK(battery.yes_cases > 0);
    CHECK(battery.no_cases > 0);
    for (const auto& d : battery.discrepancies) {
        CAPTURE(d.description);
        CAPTURE(d.graph_text);
        CAPTURE(d.instance_text);
        CHECK(false);
    }
}

TEST_CASE("the answer does not depend on which containing maximal cliques anchor the search") {
    Rng rng(73);
    for (int round = 0; round < 25; ++round) {
        const Graph g = gen_gnp(2 + rng.below(7), 55, rng.next());
        Rng local(rng.next());
        const Clique s = random_clique(g, local, 4);
        const Clique t = random_clique(g, local, 4);
        const int k = local.below(std::min(s.size(), t.size()) + 1);
        const auto ms = enumerate_maximal_cliques(g);
        const auto mcg = build_mcg(ms, k);
        std::vector<int> sources, targets;
        for (int i = 0; i < ms.size(); ++i) {
            if (s.is_subset_of(ms.cliques[static_cast<std::size_t>(i)])) sources.push_back(i);
            if (t.is_subset_of(ms.cliques[static_cast<std::size_t>(i)])) targets.push_back(i);
        }
        REQUIRE(!sources.empty());
        REQUIRE(!targets.empty());
        const bool expected = detail::bfs_path(mcg.adj, sources[0], targets[0]).reached;
        for (int a : sources) {
            for (int b : targets) {
                CHECK(detail::bfs_path(mcg.adj, a, b).reached == expected);
            }
        }
    }
}

TEST_CASE("threshold zero connects everything, even across components") {
    const Graph g = two_disjoint_edges();
    const RuleInstance inst(g, {0, 1}, {2, 3}, Rule::tar(0));
    const auto result = solve_mcg(inst);
    REQUIRE(result.yes);
    REQUIRE(result.sequence.has_value());
    // the walk hops through the empty intersection of the two edge cliques
    CHECK(validate_sequence(inst, *result.sequence).ok);
    bool passes_empty = false;
    for (const Clique& c : result.sequence->cliques) passes_empty = passes_empty || c.empty();
    CHECK(passes_empty);
}

TEST_CASE("isolated vertices are singleton maximal cliques end to end") {
    const Graph g(4, {{1, 2}});  // vertices 0 and 3 isolated
    CHECK(enumerate_maximal_cliques(g).cliques == std::vector<Clique>{{0}, {1, 2}, {3}});
    const RuleInstance inst(g, {0}, {3}, Rule::tar(1));
    CHECK_FALSE(solve_mcg(inst).yes);
    CHECK_FALSE(solve_exact(inst).yes);
    const RuleInstance loose(g, {0}, {3}, Rule::tar(0));
    CHECK(solve_mcg(loose).yes);
    CHECK(*solve_exact(loose).distance == 2);
}

TEST_CASE("mcg handles the swap rules through the threshold rewrite") {
    Rng rng(79);
    int yes_seen = 0;
    for (int round = 0; round < 40; ++round) {
        const Graph g = gen_gnp(2 + rng.below(7), 55, rng.next());
        Rng local(rng.next());
        for (const RuleKind kind : {RuleKind::tj, RuleKind::ts}) {
            const RuleInstance inst = sample_instance(g, kind, local);
            const auto fast = solve_mcg(inst);
            const auto oracle = solve_exact(inst);
            CHECK(fast.yes == oracle.yes);
            if (fast.yes) {
                ++yes_seen;
                REQUIRE(fast.sequence.has_value());
                const auto check = validate_sequence(inst, *fast.sequence);
                CAPTURE(check.reason);
                CHECK(check.ok);
                CHECK(fast.tar_threshold.has_value());
            }
        }
    }
    CHECK(yes_seen > 10);
}

TEST_SUITE_END();
