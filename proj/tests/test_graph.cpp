#include "chp/graph.hpp"

#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace chp;

TEST_CASE("make_graph basics") {
    Graph k1 = Graph::make(1, {});
    CHECK(k1.num_vertices() == 1);
    CHECK(k1.num_edges() == 0);

    Graph k3 = Graph::make(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(k3.num_edges() == 3);
    CHECK(k3.adjacent(0, 2));
    CHECK(!k3.adjacent(0, 0));

    Graph c4 = Graph::make(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(c4.num_edges() == 4);
    CHECK(!c4.adjacent(0, 2));

    // Duplicates collapse, reversed orientation included.
    Graph dup = Graph::make(2, {{0, 1}, {1, 0}, {0, 1}});
    CHECK(dup.num_edges() == 1);

    CHECK_THROWS_AS(Graph::make(2, {{0, 2}}), GraphError);
    CHECK_THROWS_AS(Graph::make(2, {{1, 1}}), GraphError);
    CHECK_THROWS_WITH_AS(Graph::make(3, {{2, 2}}), doctest::Contains("(2,2)"), GraphError);
}

TEST_CASE("induced subgraph") {
    Graph c4 = oracles::cycle(4);
    auto sub = induced_subgraph(c4, {0, 1, 2});
    CHECK(sub.graph.num_vertices() == 3);
    CHECK(sub.graph.num_edges() == 2);  // P_3
    CHECK(sub.graph.adjacent(0, 1));
    CHECK(sub.graph.adjacent(1, 2));
    CHECK(!sub.graph.adjacent(0, 2));

    Graph prism = oracles::prism();
    VertexSet all(6);
    for (int v = 0; v < 6; ++v) all[v] = v;
    auto whole = induced_subgraph(prism, all);
    CHECK(whole.graph == prism);
    for (int v = 0; v < 6; ++v) CHECK(whole.to_sub[v] == v);

    // prism on {a,b,y,x} = {0,1,4,3} gives C_4.
    auto four = induced_subgraph(prism, {0, 1, 3, 4});
    CHECK(four.graph.num_edges() == 4);
    CHECK(are_isomorphic(four.graph, oracles::cycle(4)));

    CHECK_THROWS_AS(induced_subgraph(c4, {}), GraphError);
    CHECK_THROWS_AS(induced_subgraph(c4, {0, 7}), GraphError);
}

TEST_CASE("induced subgraph keeps exactly the inner edges (random re-expansion)") {
    std::mt19937 rng(7001);
    for (int trial = 0; trial < 50; ++trial) {
        Graph g = oracles::random_graph(rng, 9, 0.4);
        std::uniform_int_distribution<int> size_dist(1, 9);
        auto subsets = oracles::all_subsets_of_size(9, size_dist(rng));
        const VertexSet& s = subsets[rng() % subsets.size()];
        auto sub = induced_subgraph(g, s);
        for (size_t i = 0; i < s.size(); ++i) {
            for (size_t j = i + 1; j < s.size(); ++j) {
                CHECK(sub.graph.adjacent(static_cast<int>(i), static_cast<int>(j)) ==
                      g.adjacent(s[i], s[j]));
            }
        }
    }
}

TEST_CASE("components") {
    auto comps = components(oracles::complete(3));
    REQUIRE(comps.size() == 1);
    CHECK(comps[0] == VertexSet{0, 1, 2});

    Graph sparse = Graph::make(5, {{0, 1}});
    comps = components(sparse);
    REQUIRE(comps.size() == 4);
    CHECK(comps[0] == VertexSet{0, 1});
    CHECK(comps[1] == VertexSet{2});
    CHECK(comps[3] == VertexSet{4});

    // P_3 minus the middle vertex: two singletons.
    Graph p3_ends = Graph::make(3, {});
    auto sub = induced_subgraph(oracles::path(3), {0, 2});
    comps = components(sub.graph);
    REQUIRE(comps.size() == 2);

    // Every edge stays within one component.
    std::mt19937 rng(7002);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = oracles::random_graph(rng, 10, 0.15);
        auto cs = components(g);
        std::vector<int> comp_of(10, -1);
        int covered = 0;
        for (size_t i = 0; i < cs.size(); ++i) {
            for (int v : cs[i]) {
                CHECK(comp_of[v] == -1);
                comp_of[v] = static_cast<int>(i);
                ++covered;
            }
        }
        CHECK(covered == 10);
        for (auto [u, v] : g.edges()) CHECK(comp_of[u] == comp_of[v]);
    }
}

TEST_CASE("is_clique") {
    Graph k4 = oracles::complete(4);
    CHECK(is_clique(k4, {0, 1, 2}));
    CHECK(is_clique(k4, {1, 2, 3}));
    Graph c4 = oracles::cycle(4);
    CHECK(!is_clique(c4, {0, 2}));
    CHECK(is_clique(c4, {}));
    CHECK(is_clique(c4, {3}));
}

TEST_CASE("enumerate_cliques") {
    auto triangles = enumerate_cliques(oracles::complete(3), 2);
    CHECK(triangles.size() == 3);

    CHECK(enumerate_cliques(oracles::cycle(4), 3).empty());

    // The prism has exactly its two triangle faces; oracle = all 20 triples.
    Graph prism = oracles::prism();
    auto expected = oracles::naive_cliques(prism, 3);
    REQUIRE(expected.size() == 2);
    CHECK(enumerate_cliques(prism, 3) == expected);
}

TEST_CASE("enumerate_cliques equals subset filter on random graphs") {
    std::mt19937 rng(7003);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = oracles::random_graph(rng, 8, 0.5);
        for (int q = 1; q <= 4; ++q) {
            CHECK(enumerate_cliques(g, q) == oracles::naive_cliques(g, q));
        }
    }
}

TEST_CASE("complement") {
    Graph co_k4 = complement(oracles::complete(4));
    CHECK(co_k4.num_edges() == 0);

    std::mt19937 rng(7004);
    Graph g = oracles::random_graph(rng, 9, 0.3);
    CHECK(complement(complement(g)) == g);

    CHECK(are_isomorphic(complement(oracles::cycle(5)), oracles::cycle(5)));
}

TEST_CASE("contains_induced") {
    CHECK(contains_induced(oracles::cycle(4), oracles::path(3)).has_value());
    CHECK(!contains_induced(oracles::complete(4), oracles::cycle(4)).has_value());

    Graph prism = oracles::prism();
    auto witness = contains_induced(prism, oracles::cycle(4));
    REQUIRE(witness.has_value());
    // Replay the witness: adjacency and non-adjacency both preserved.
    Graph c4 = oracles::cycle(4);
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            CHECK(c4.adjacent(i, j) == prism.adjacent((*witness)[i], (*witness)[j]));
        }
    }

    CHECK_THROWS_AS(contains_induced(oracles::complete(10), oracles::complete(9)), CapExceeded);
}

TEST_CASE("contains_induced agrees with the all-injections oracle") {
    std::mt19937 rng(7005);
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = oracles::random_graph(rng, 8, 0.45);
        Graph h = oracles::random_graph(rng, 2 + static_cast<int>(rng() % 4), 0.5);
        CHECK(contains_induced(g, h).has_value() == oracles::naive_contains_induced(g, h));
    }
}

TEST_CASE("are_isomorphic") {
    CHECK(are_isomorphic(oracles::complete(3), oracles::cycle(3)));
    CHECK(!are_isomorphic(oracles::path(3), oracles::complete(3)));

    // Relabeling invariance on random graphs.
    std::mt19937 rng(7006);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = oracles::random_graph(rng, 8, 0.5);
        std::vector<int> perm(8);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::pair<int, int>> edges;
        for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
        CHECK(are_isomorphic(g, Graph::make(8, edges)));
    }

    // Same degree sequence, different graphs: C_6 vs two triangles.
    Graph c6 = oracles::cycle(6);
    Graph two_triangles =
        Graph::make(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    CHECK(!are_isomorphic(c6, two_triangles));

    CHECK_THROWS_AS(are_isomorphic(oracles::complete(13), oracles::complete(13)), CapExceeded);
}
