#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include <graphfeat/graph.hpp>
#include <graphfeat/metrics.hpp>
#include <graphfeat/rng.hpp>

#include "oracles.hpp"

using namespace graphfeat;

namespace {

Graph k3() { return Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }
Graph p3() { return Graph::from_edges(3, {{0, 1}, {1, 2}}); }
Graph star(int leaves) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return Graph::from_edges(leaves + 1, std::move(e));
}

}  // namespace

TEST_CASE("average_degree") {
    CHECK(average_degree(k3()) == Catch::Approx(2.0));
    CHECK(average_degree(p3()) == Catch::Approx(4.0 / 3.0));
    CHECK(average_degree(star(3)) == Catch::Approx(1.5));
    CHECK_THROWS_AS(average_degree(Graph{}), std::invalid_argument);
}

TEST_CASE("diameter on fixed shapes") {
    CHECK(diameter(k3()) == 1);
    CHECK(diameter(p3()) == 2);

    // K3 on ids 0-2 disjoint from P3 on ids 3-5: size tie resolves to the
    // component with the smallest node id, so the K3 wins.
    Graph both = Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}});
    CHECK(diameter(both) == 1);
    Graph swapped = Graph::from_edges(6, {{3, 4}, {4, 5}, {3, 5}, {0, 1}, {1, 2}});
    CHECK(diameter(swapped) == 2);

    CHECK(diameter(Graph::from_edges(1, {})) == 0);
}

TEST_CASE("closeness on fixed shapes") {
    CHECK(average_closeness(k3()) == Catch::Approx(1.0));
    CHECK(average_closeness(p3()) == Catch::Approx(7.0 / 9.0));
    // single edge plus isolated node: 0.5, 0.5, 0
    Graph mixed = Graph::from_edges(3, {{0, 1}});
    auto h = closeness_centrality(mixed);
    CHECK(h[0] == Catch::Approx(0.5));
    CHECK(h[1] == Catch::Approx(0.5));
    CHECK(h[2] == 0.0);
    CHECK(average_closeness(mixed) == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("betweenness on fixed shapes") {
    CHECK(average_betweenness(k3()) == Catch::Approx(0.0));
    auto bc = betweenness_centrality(p3());
    CHECK(bc[0] == Catch::Approx(0.0));
    CHECK(bc[1] == Catch::Approx(1.0));
    CHECK(average_betweenness(p3()) == Catch::Approx(1.0 / 3.0));

    auto hub = betweenness_centrality(star(5));
    CHECK(hub[0] == Catch::Approx(1.0));
    for (int leaf = 1; leaf <= 5; ++leaf) CHECK(hub[static_cast<std::size_t>(leaf)] == 0.0);
    CHECK(average_betweenness(star(5)) == Catch::Approx(1.0 / 6.0));
}

TEST_CASE("clustering on fixed shapes") {
    CHECK(average_clustering(k3()) == Catch::Approx(1.0));
    CHECK(average_clustering(star(3)) == Catch::Approx(0.0));
    // K4 minus one edge: coefficients 2/3, 2/3, 1, 1
    Graph diamond = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
    auto c = local_clustering(diamond);
    CHECK(c[0] == Catch::Approx(2.0 / 3.0));
    CHECK(c[1] == Catch::Approx(2.0 / 3.0));
    CHECK(c[2] == Catch::Approx(1.0));
    CHECK(c[3] == Catch::Approx(1.0));
    CHECK(average_clustering(diamond) == Catch::Approx(5.0 / 6.0));
}

TEST_CASE("all metrics vanish on the edgeless graph") {
    Graph lone = Graph::from_edges(7, {});
    CHECK(average_degree(lone) == 0.0);
    CHECK(diameter(lone) == 0);
    CHECK(average_closeness(lone) == 0.0);
    CHECK(average_betweenness(lone) == 0.0);
    CHECK(average_clustering(lone) == 0.0);
}

TEST_CASE("metrics match brute-force oracles on random graphs") {
    Rng rng(0x0a11ull);
    int checked = 0;
    while (checked < 200) {
        Graph g = oracles::random_graph(rng, 12);
        ++checked;

        CHECK(diameter(g) == oracles::naive_diameter(g));

        auto h = closeness_centrality(g);
        auto h_ref = oracles::naive_closeness(g);
        auto bc = betweenness_centrality(g);
        auto bc_ref = oracles::naive_betweenness(g);
        auto c = local_clustering(g);
        auto c_ref = oracles::naive_clustering(g);
        for (int v = 0; v < g.node_count(); ++v) {
            auto i = static_cast<std::size_t>(v);
            CHECK(std::abs(h[i] - h_ref[i]) < 1e-9);
            CHECK(std::abs(bc[i] - bc_ref[i]) < 1e-9);
            CHECK(std::abs(c[i] - c_ref[i]) < 1e-9);
        }
    }
}

TEST_CASE("closeness and diameter are invariant under relabeling") {
    Rng rng(0x9e1abull);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = oracles::gnp(2 + static_cast<int>(rng.below(14)), 0.4 + 0.5 * rng.next_double(), rng);
        if (connected_components(g).count() != 1) continue;  // unique largest component
        std::vector<int> perm(static_cast<std::size_t>(g.node_count()));
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        Graph relabeled = oracles::relabel(g, perm);
        CHECK(diameter(relabeled) == diameter(g));
        CHECK(average_closeness(relabeled) == Catch::Approx(average_closeness(g)).margin(1e-12));
    }
}
