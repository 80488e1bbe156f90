#include <doctest.h>

#include "reconf/generators.hpp"
#include "reconf/graph.hpp"
#include "test_helpers.hpp"

using namespace reconf;
using namespace reconf::testing;

TEST_SUITE_BEGIN("graph");

TEST_CASE("parse_graph reads the header and edges") {
    const Graph g = parse_graph("p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 2));
    CHECK(g.adjacent(0, 2));
}

TEST_CASE("parse_graph accepts comments, blank lines and duplicate edges") {
    const Graph g = parse_graph("c a path\np edge 4 3\ne 1 2\n\ne 2 3\nc mid\ne 3 4\ne 1 2\n");
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 3);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 2));
    CHECK(g.adjacent(2, 3));
    CHECK_FALSE(g.adjacent(0, 2));
}

TEST_CASE("parse_graph rejects malformed input naming the line") {
    CHECK_THROWS_WITH_AS(parse_graph("p edge 2 1\ne 1 1\n"), doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_AS(parse_graph("e 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("p edge 2 1\ne 1 3\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("p edge 2 1\ne 1\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("p foo 2 1\n"), ParseError);
    CHECK_THROWS_AS(parse_graph(""), ParseError);
    CHECK_THROWS_AS(parse_graph("p edge 99999999999 0\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("p edge 2000000000 0\n"), ParseError);
}

TEST_CASE("serialize then parse preserves the adjacency relation") {
    Rng rng(7);
    for (int round = 0; round < 25; ++round) {
        const Graph g = gen_gnp(1 + rng.below(12), 40, rng.next());
        const Graph back = parse_graph(serialize_graph(g));
        REQUIRE(back.vertex_count() == g.vertex_count());
        for (int u = 0; u < g.vertex_count(); ++u) {
            for (int v = u + 1; v < g.vertex_count(); ++v) {
                CHECK(back.adjacent(u, v) == g.adjacent(u, v));
            }
        }
    }
}

TEST_CASE("is_clique") {
    const Graph k3 = triangle();
    CHECK(is_clique(k3, {0, 1, 2}));
    CHECK(is_clique(k3, {}));
    CHECK(is_clique(k3, {1}));
    const Graph p4 = path4();
    CHECK_FALSE(is_clique(p4, {0, 2}));
    CHECK(is_clique(p4, {1, 2}));
    CHECK_THROWS_AS(is_clique(p4, {0, 9}), InputError);
}

TEST_CASE("complement of a triangle has no edges") {
    const Graph c = complement(triangle());
    CHECK(c.vertex_count() == 3);
    CHECK(c.edge_count() == 0);
}

TEST_CASE("complement of the path 0-1-2-3") {
    const Graph c = complement(path4());
    CHECK(c.edge_count() == 3);
    CHECK(c.adjacent(0, 2));
    CHECK(c.adjacent(0, 3));
    CHECK(c.adjacent(1, 3));
    CHECK_FALSE(c.adjacent(0, 1));
}

TEST_CASE("complement is an involution") {
    Rng rng(11);
    for (int round = 0; round < 10; ++round) {
        const Graph g = gen_gnp(1 + rng.below(10), 50, rng.next());
        const Graph back = complement(complement(g));
        for (int u = 0; u < g.vertex_count(); ++u) {
            for (int v = u + 1; v < g.vertex_count(); ++v) {
                CHECK(back.adjacent(u, v) == g.adjacent(u, v));
            }
        }
    }
}

TEST_CASE("cliques of g are independent sets of the complement") {
    Rng rng(13);
    for (int round = 0; round < 40; ++round) {
        const int n = 1 + rng.below(64);
        const Graph g = gen_gnp(n, 50, rng.next());
        const Graph co = complement(g);
        std::vector<int> vs;
        for (int v = 0; v < n; ++v) {
            if (rng.one_in(3)) vs.push_back(v);
        }
        const VertexSet s(vs);
        bool independent_in_co = true;
        for (std::size_t i = 0; i < vs.size() && independent_in_co; ++i) {
            for (std::size_t j = i + 1; j < vs.size(); ++j) {
                if (co.adjacent(vs[i], vs[j])) {
                    independent_in_co = false;
                    break;
                }
            }
        }
        CHECK(is_clique(g, s) == independent_in_co);
    }
}

TEST_CASE("induced subgraph examples") {
    SUBCASE("k4 on three vertices is a triangle") {
        const auto sub = induced_subgraph(k4(), {0, 1, 2});
        CHECK(sub.graph.vertex_count() == 3);
        CHECK(sub.graph.edge_count() == 3);
    }
    SUBCASE("path endpoints induce no edges") {
        const auto sub = induced_subgraph(path4(), {0, 3});
        CHECK(sub.graph.vertex_count() == 2);
        CHECK(sub.graph.edge_count() == 0);
    }
    SUBCASE("diamond minus vertex 0 is a path through vertex 1") {
        const auto sub = induced_subgraph(diamond(), {1, 2, 3});
        CHECK(sub.graph.vertex_count() == 3);
        CHECK(sub.graph.edge_count() == 2);
        // new labels: 1 -> 0, 2 -> 1, 3 -> 2
        CHECK(sub.graph.adjacent(0, 1));
        CHECK(sub.graph.adjacent(0, 2));
        CHECK_FALSE(sub.graph.adjacent(1, 2));
        CHECK(sub.to_original == std::vector<int>{1, 2, 3});
    }
}

TEST_CASE("induced subgraph preserves adjacency through the map") {
    Rng rng(17);
    for (int round = 0; round < 20; ++round) {
        const int n = 2 + rng.below(12);
        const Graph g = gen_gnp(n, 50, rng.next());
        std::vector<int> vs;
        for (int v = 0; v < n; ++v) {
            if (!rng.one_in(3)) vs.push_back(v);
        }
        const auto sub = induced_subgraph(g, VertexSet(vs));
        for (int a = 0; a < sub.graph.vertex_count(); ++a) {
            for (int b = a + 1; b < sub.graph.vertex_count(); ++b) {
                CHECK(sub.graph.adjacent(a, b) == g.adjacent(sub.to_original[a], sub.to_original[b]));
            }
        }
    }
}

TEST_CASE("vertex set operations") {
    const VertexSet a{3, 1, 2, 1};
    CHECK(a.size() == 3);
    CHECK(a.members() == std::vector<int>{1, 2, 3});
    CHECK(a.contains(2));
    CHECK_FALSE(a.contains(4));
    CHECK(a.with(0).members() == std::vector<int>{0, 1, 2, 3});
    CHECK(a.without(2).members() == std::vector<int>{1, 3});
    const VertexSet b{2, 3, 4};
    CHECK(a.intersection_size(b) == 2);
    CHECK(a.sym_diff_size(b) == 2);
    CHECK(a.intersects_at_least(b, 2));
    CHECK_FALSE(a.intersects_at_least(b, 3));
    CHECK(VertexSet{2, 3}.is_subset_of(a));
    CHECK_FALSE(b.is_subset_of(a));
    CHECK(a.unite(b).members() == std::vector<int>{1, 2, 3, 4});
    CHECK(a.minus(b).members() == std::vector<int>{1});
}

TEST_SUITE_END();
