#include "chp/partition.hpp"

#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

using namespace chp;

namespace {

Partition singletons(const Graph& g) {
    std::vector<VertexSet> parts;
    for (int v = 0; v < g.num_vertices(); ++v) parts.push_back({v});
    return make_partition(g, std::move(parts));
}

// Random connected partition: start from singletons, repeatedly merge parts
// joined by an edge. Merging adjacent connected parts stays connected.
Partition random_connected_partition(const Graph& g, std::mt19937& rng, int merges) {
    std::vector<int> part_of(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) part_of[v] = v;
    auto edges = g.edges();
    for (int step = 0; step < merges && !edges.empty(); ++step) {
        auto [u, v] = edges[rng() % edges.size()];
        int from = part_of[v], to = part_of[u];
        if (from == to) continue;
        for (int& p : part_of) {
            if (p == from) p = to;
        }
    }
    std::vector<VertexSet> grouped(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) grouped[part_of[v]].push_back(v);
    std::vector<VertexSet> parts;
    for (auto& part : grouped) {
        if (!part.empty()) parts.push_back(std::move(part));
    }
    return make_partition(g, std::move(parts));
}

}  // namespace

TEST_CASE("partition validation") {
    Graph p3 = oracles::path(3);
    CHECK_THROWS_AS(make_partition(p3, {{0, 1}}), GraphError);          // gap
    CHECK_THROWS_AS(make_partition(p3, {{0, 1}, {1, 2}}), GraphError);  // overlap
    CHECK_THROWS_AS(make_partition(p3, {{0, 1, 2}, {}}), GraphError);   // empty part
    CHECK_THROWS_AS(make_partition(p3, {{0, 1, 5}}), GraphError);       // out of range

    // Canonicalization: parts ordered by min id, members sorted.
    Partition p = make_partition(p3, {{2, 1}, {0}});
    CHECK(p.parts == std::vector<VertexSet>{{0}, {1, 2}});
}

TEST_CASE("is_connected_partition") {
    Graph p3 = oracles::path(3);
    CHECK(is_connected_partition(p3, singletons(p3)));
    CHECK(is_connected_partition(p3, make_partition(p3, {{0, 1, 2}})));
    CHECK(!is_connected_partition(p3, make_partition(p3, {{0, 2}, {1}})));

    // Malformed partition is a structural error, not `false`.
    Partition bad{{{0, 1}}, 3};
    CHECK_THROWS_AS(is_connected_partition(p3, bad), GraphError);
}

TEST_CASE("quotient") {
    Graph prism = oracles::prism();
    CHECK(are_isomorphic(quotient(prism, singletons(prism)).graph, prism));

    auto two_triangles = make_partition(prism, {{0, 1, 2}, {3, 4, 5}});
    Graph q = quotient(prism, two_triangles).graph;
    CHECK(q.num_vertices() == 2);
    CHECK(q.num_edges() == 1);

    Graph p3 = oracles::path(3);
    Graph q2 = quotient(p3, make_partition(p3, {{0, 1}, {2}})).graph;
    CHECK(q2.num_vertices() == 2);
    CHECK(q2.num_edges() == 1);
}

TEST_CASE("check_restriction_precondition") {
    Graph prism = oracles::prism();
    VertexSet all{0, 1, 2, 3, 4, 5};
    CHECK(check_restriction_precondition(prism, all).ok);  // no components

    // Triangle abc plus d adjacent to a,b: N(d) = {a,b} is a clique.
    Graph tri_pend = Graph::make(4, {{0, 1}, {1, 2}, {0, 2}, {3, 0}, {3, 1}});
    CHECK(check_restriction_precondition(tri_pend, {0, 1, 2}).ok);

    // C_4 with X = two opposite vertices: the component sees both, nonadjacent.
    Graph c4 = oracles::cycle(4);
    auto pre = check_restriction_precondition(c4, {0, 2});
    CHECK(!pre.ok);
    CHECK(!c4.adjacent(pre.u, pre.v));
    CHECK(!pre.component.empty());
}

TEST_CASE("restrict_partition") {
    // X = V(G) returns the partition itself.
    Graph prism = oracles::prism();
    auto p = make_partition(prism, {{0, 1, 2}, {3, 4, 5}});
    auto whole = restrict_partition(prism, p, {0, 1, 2, 3, 4, 5});
    CHECK(whole.partition.parts == p.parts);

    // Triangle abc + pendant d~a,b with P = {{a,d},{b},{c}}, X = {a,b,c}:
    // restriction is all singletons and its quotient is K_3.
    Graph g = Graph::make(4, {{0, 1}, {1, 2}, {0, 2}, {3, 0}, {3, 1}});
    auto part = make_partition(g, {{0, 3}, {1}, {2}});
    auto restr = restrict_partition(g, part, {0, 1, 2});
    CHECK(restr.partition.parts == std::vector<VertexSet>{{0}, {1}, {2}});
    Graph rq = quotient(restr.subgraph, restr.partition).graph;
    CHECK(rq.num_edges() == 3);
    // ... which equals the induced subgraph of G/P on the parts meeting X.
    Graph gq = quotient(g, part).graph;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            CHECK(rq.adjacent(i, j) ==
                  gq.adjacent(restr.part_origin[i], restr.part_origin[j]));
        }
    }

    // Violated hypothesis is rejected, force pushes through.
    Graph c4 = oracles::cycle(4);
    auto sp = singletons(c4);
    CHECK_THROWS_AS(restrict_partition(c4, sp, {0, 2}), GraphError);
    auto forced = restrict_partition(c4, sp, {0, 2}, true);
    CHECK(forced.forced);
    CHECK(forced.partition.num_parts() == 2);
}

TEST_CASE("restriction lemma on random instances built to satisfy the hypothesis") {
    // Random base X, then components attached inside random cliques of X.
    std::mt19937 rng(9001);
    for (int trial = 0; trial < 60; ++trial) {
        int nx = 3 + static_cast<int>(rng() % 5);
        Graph x = oracles::random_graph(rng, nx, 0.55);
        std::vector<std::pair<int, int>> edges = x.edges();
        int n = nx;
        for (int c = 0; c < 2; ++c) {
            // Grow a random clique greedily inside X.
            VertexSet clique{static_cast<int>(rng() % nx)};
            for (int v = 0; v < nx; ++v) {
                bool all = true;
                for (int u : clique) all = all && x.adjacent(u, v);
                if (all && (rng() & 1)) clique.push_back(v);
            }
            std::sort(clique.begin(), clique.end());
            int nc = 1 + static_cast<int>(rng() % 3);
            // Connected blob: a path on nc fresh vertices.
            for (int i = 1; i < nc; ++i) edges.emplace_back(n + i - 1, n + i);
            for (int i = 0; i < nc; ++i) {
                for (int u : clique) {
                    if (rng() & 1) edges.emplace_back(u, n + i);
                }
            }
            n += nc;
        }
        Graph g = Graph::make(n, edges);
        VertexSet xs(nx);
        for (int v = 0; v < nx; ++v) xs[v] = v;
        REQUIRE(check_restriction_precondition(g, xs).ok);

        for (int sample = 0; sample < 5; ++sample) {
            Partition p = random_connected_partition(g, rng, 1 + static_cast<int>(rng() % n));
            auto restr = restrict_partition(g, p, xs);
            CHECK(is_connected_partition(restr.subgraph, restr.partition));
            Graph rq = quotient(restr.subgraph, restr.partition).graph;
            Graph gq = quotient(g, p).graph;
            for (int i = 0; i < restr.partition.num_parts(); ++i) {
                for (int j = i + 1; j < restr.partition.num_parts(); ++j) {
                    CHECK(rq.adjacent(i, j) ==
                          gq.adjacent(restr.part_origin[i], restr.part_origin[j]));
                }
            }
        }
    }
}

TEST_CASE("outcome_clique_spread") {
    Graph prism = oracles::prism();
    auto triangles = make_partition(prism, {{0, 1, 2}, {3, 4, 5}});
    CHECK(outcome_clique_spread(prism, triangles, 2, 1).has_value());
    CHECK(!outcome_clique_spread(prism, singletons(prism), 2, 1).has_value());

    Graph k4 = oracles::complete(4);
    auto two_edges = make_partition(k4, {{0, 1}, {2, 3}});
    auto spread = outcome_clique_spread(k4, two_edges, 2, 2);
    REQUIRE(spread.has_value());
    CHECK(spread->clique.size() == 4);
    CHECK(spread->parts == std::vector<int>{0, 1});

    // k=1, r=1 is satisfied by any single vertex.
    CHECK(outcome_clique_spread(prism, singletons(prism), 1, 1).has_value());
}

TEST_CASE("outcome_part_clique") {
    Graph prism = oracles::prism();
    auto triangles = make_partition(prism, {{0, 1, 2}, {3, 4, 5}});
    CHECK(outcome_part_clique(prism, triangles, 2).has_value());
    CHECK(outcome_part_clique(prism, singletons(prism), 0).has_value());
    CHECK(!outcome_part_clique(prism, singletons(prism), 1).has_value());
}

TEST_CASE("enumerate_connected_partitions counts") {
    CHECK(enumerate_connected_partitions(Graph::make(1, {})).size() == 1);

    // P_3: 4 of the 5 set partitions are connected ({a,w}|{b} is not).
    Graph p3 = oracles::path(3);
    auto parts = enumerate_connected_partitions(p3);
    CHECK(parts.size() == 4);

    // K_3: all 5.
    CHECK(enumerate_connected_partitions(oracles::complete(3)).size() == 5);

    CHECK_THROWS_AS(enumerate_connected_partitions(oracles::complete(13), 12), CapExceeded);
}

TEST_CASE("enumeration agrees with Bell-filter oracle and emits valid partitions") {
    std::mt19937 rng(9002);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 1 + static_cast<int>(rng() % 7);
        Graph g = oracles::random_graph(rng, n, 0.4);

        uint64_t expected = 0;
        for (const auto& parts : oracles::all_set_partitions(n)) {
            bool connected = true;
            for (const auto& part : parts) connected = connected && oracles::naive_connected(g, part);
            if (connected) ++expected;
        }

        auto emitted = enumerate_connected_partitions(g);
        CHECK(emitted.size() == expected);
        std::set<std::vector<VertexSet>> unique_parts;
        for (const auto& p : emitted) {
            CHECK(is_connected_partition(g, p));
            unique_parts.insert(p.parts);
        }
        CHECK(unique_parts.size() == emitted.size());  // each exactly once
    }
}

TEST_CASE("prefix split covers the space exactly once") {
    std::mt19937 rng(9003);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 4 + static_cast<int>(rng() % 5);
        Graph g = oracles::random_graph(rng, n, 0.45);
        uint64_t full = count_connected_partitions(g);

        ConnectedPartitionEnumerator splitter(g);
        for (int depth : {2, 3, 4}) {
            auto prefixes = splitter.prefixes(depth);
            uint64_t total = 0;
            std::set<std::vector<VertexSet>> seen;
            for (const auto& prefix : prefixes) {
                ConnectedPartitionEnumerator worker(g);
                total += worker.run_prefix(prefix, [&](int np, const uint64_t* masks, const int*) {
                    seen.insert(partition_from_masks(g, np, masks).parts);
                    return true;
                });
            }
            CHECK(total == full);
            CHECK(seen.size() == full);
        }
    }
}

TEST_CASE("quotient of singleton partition is isomorphic to the graph") {
    std::mt19937 rng(9004);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = oracles::random_graph(rng, 7, 0.5);
        CHECK(are_isomorphic(quotient(g, singletons(g)).graph, g));
    }
}
