#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <set>

#include <graphfeat/graph.hpp>
#include <graphfeat/rng.hpp>
#include <graphfeat/tudataset.hpp>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace graphfeat;

TEST_CASE("from_edges simplifies input and keeps sorted symmetric adjacency") {
    SimplifyCounts counts;
    Graph g = Graph::from_edges(4, {{0, 1}, {1, 0}, {1, 1}, {2, 3}, {3, 2}, {3, 2}}, &counts);
    CHECK(counts.self_loops == 1);
    CHECK(counts.duplicate_edges == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(1, 1));

    long long degree_sum = 0;
    for (int v = 0; v < g.node_count(); ++v) {
        degree_sum += g.degree(v);
        auto nb = g.neighbors(v);
        CHECK(std::is_sorted(nb.begin(), nb.end()));
        for (int u : nb) CHECK(g.has_edge(u, v));
    }
    CHECK(degree_sum == 2 * g.edge_count());
}

TEST_CASE("from_edges rejects out-of-range endpoints") {
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(2, {{-1, 0}}), std::invalid_argument);
}

TEST_CASE("connected components on simple shapes") {
    Graph triangle = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    auto p = connected_components(triangle);
    REQUIRE(p.count() == 1);
    CHECK(p.component_sizes[0] == 3);

    Graph two_edges = Graph::from_edges(4, {{0, 1}, {2, 3}});
    p = connected_components(two_edges);
    REQUIRE(p.count() == 2);
    CHECK(p.component_sizes[0] == 2);
    CHECK(p.component_sizes[1] == 2);

    // star on {0..3} plus isolated node 4
    Graph star = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}});
    p = connected_components(star);
    REQUIRE(p.count() == 2);
    CHECK(p.component_sizes[0] == 4);
    CHECK(p.component_sizes[1] == 1);

    Graph empty;
    p = connected_components(empty);
    CHECK(p.count() == 0);
}

TEST_CASE("component sizes sum to n and edges stay inside components") {
    Rng rng(0xc0115ull);
    for (int trial = 0; trial < 50; ++trial) {
        Graph g = oracles::random_graph(rng, 30);
        auto p = connected_components(g);
        CHECK(std::accumulate(p.component_sizes.begin(), p.component_sizes.end(), 0) ==
              g.node_count());
        for (auto [u, v] : g.edge_list())
            CHECK(p.component_of[static_cast<std::size_t>(u)] ==
                  p.component_of[static_cast<std::size_t>(v)]);
    }
}

TEST_CASE("largest_component_subgraph") {
    Graph p3 = Graph::from_edges(3, {{0, 1}, {1, 2}});
    Graph sub = largest_component_subgraph(p3);
    CHECK(sub.node_count() == 3);
    CHECK(sub.edge_count() == 2);

    Graph mixed = Graph::from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {3, 4}});
    sub = largest_component_subgraph(mixed);
    CHECK(sub.node_count() == 3);
    CHECK(sub.edge_count() == 3);

    // size tie: the component holding the smallest node id wins
    Graph tie = Graph::from_edges(4, {{0, 1}, {2, 3}});
    sub = largest_component_subgraph(tie);
    CHECK(sub.node_count() == 2);
    CHECK(sub.edge_count() == 1);

    CHECK_THROWS_AS(largest_component_subgraph(Graph{}), std::invalid_argument);
}

namespace {

std::string standard_triangle_a() { return "1, 2\n2, 1\n2, 3\n3, 2\n1, 3\n3, 1\n"; }

void write_triangle_fixture(const std::filesystem::path& dir, const std::string& name) {
    testutil::write_file(dir / (name + "_A.txt"), standard_triangle_a());
    testutil::write_file(dir / (name + "_graph_indicator.txt"), "1\n1\n1\n");
    testutil::write_file(dir / (name + "_graph_labels.txt"), "1\n");
}

}  // namespace

TEST_CASE("parse_tudataset on the smallest well-formed fixture") {
    testutil::TempDir tmp("triangle");
    write_triangle_fixture(tmp.path, "tri");
    Dataset ds = parse_tudataset(tmp.path, "tri");
    REQUIRE(ds.graphs.size() == 1);
    CHECK(ds.num_classes() == 1);
    CHECK(ds.graphs[0].node_count() == 3);
    CHECK(ds.graphs[0].edge_count() == 3);
    CHECK(ds.labels[0] == 0);
    CHECK(ds.class_labels[0] == 1);
}

TEST_CASE("parse_tudataset tolerates whitespace and CRLF endings") {
    testutil::TempDir tmp("crlf");
    testutil::write_file(tmp.path / "ds_A.txt", "1, 2\r\n 2 , 1 \r\n2, 3\r\n3, 2\r\n");
    testutil::write_file(tmp.path / "ds_graph_indicator.txt", "1\r\n1\r\n1\r\n");
    testutil::write_file(tmp.path / "ds_graph_labels.txt", "-1\r\n");
    Dataset ds = parse_tudataset(tmp.path, "ds");
    REQUIRE(ds.graphs.size() == 1);
    CHECK(ds.graphs[0].edge_count() == 2);
    CHECK(ds.class_labels[0] == -1);
}

TEST_CASE("parse warnings: bidirectional listing is normal, extra copies are not") {
    testutil::TempDir tmp("warn");
    SECTION("conventional both-directions file raises no warnings") {
        write_triangle_fixture(tmp.path, "ds");
        Dataset ds = parse_tudataset(tmp.path, "ds");
        CHECK(ds.simplified.self_loops == 0);
        CHECK(ds.simplified.duplicate_edges == 0);
    }
    SECTION("a third copy of a pair and a self-loop are counted") {
        testutil::write_file(tmp.path / "ds_A.txt", "1, 2\n2, 1\n1, 2\n3, 3\n2, 3\n3, 2\n");
        testutil::write_file(tmp.path / "ds_graph_indicator.txt", "1\n1\n1\n");
        testutil::write_file(tmp.path / "ds_graph_labels.txt", "1\n");
        Dataset ds = parse_tudataset(tmp.path, "ds");
        CHECK(ds.simplified.self_loops == 1);
        CHECK(ds.simplified.duplicate_edges == 1);
        CHECK(ds.graphs[0].edge_count() == 2);
    }
}

TEST_CASE("parse_tudataset labels remap by first appearance") {
    testutil::TempDir tmp("labels");
    testutil::write_file(tmp.path / "ds_A.txt", "1, 2\n3, 4\n5, 6\n");
    testutil::write_file(tmp.path / "ds_graph_indicator.txt", "1\n1\n2\n2\n3\n3\n");
    testutil::write_file(tmp.path / "ds_graph_labels.txt", "7\n-2\n7\n");
    Dataset ds = parse_tudataset(tmp.path, "ds");
    CHECK(ds.labels == std::vector<int>{0, 1, 0});
    CHECK(ds.class_labels == std::vector<long long>{7, -2});
}

TEST_CASE("parse_tudataset error paths") {
    testutil::TempDir tmp("errors");

    SECTION("missing file names the file") {
        write_triangle_fixture(tmp.path, "ds");
        std::filesystem::remove(tmp.path / "ds_graph_labels.txt");
        CHECK_THROWS_MATCHES(parse_tudataset(tmp.path, "ds"), IngestError,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("ds_graph_labels.txt")));
    }
    SECTION("edge referencing an unassigned node id carries the line number") {
        write_triangle_fixture(tmp.path, "ds");
        testutil::write_file(tmp.path / "ds_A.txt", "1, 2\n2, 9\n");
        CHECK_THROWS_MATCHES(
            parse_tudataset(tmp.path, "ds"), FormatError,
            Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("ds_A.txt:2")));
    }
    SECTION("edge crossing two graphs is rejected") {
        testutil::write_file(tmp.path / "ds_A.txt", "1, 2\n2, 3\n");
        testutil::write_file(tmp.path / "ds_graph_indicator.txt", "1\n1\n2\n");
        testutil::write_file(tmp.path / "ds_graph_labels.txt", "1\n1\n");
        CHECK_THROWS_MATCHES(
            parse_tudataset(tmp.path, "ds"), FormatError,
            Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("crosses")));
    }
    SECTION("empty edge file is rejected") {
        write_triangle_fixture(tmp.path, "ds");
        testutil::write_file(tmp.path / "ds_A.txt", "\n");
        CHECK_THROWS_AS(parse_tudataset(tmp.path, "ds"), FormatError);
    }
    SECTION("label count must match graph count") {
        write_triangle_fixture(tmp.path, "ds");
        testutil::write_file(tmp.path / "ds_graph_labels.txt", "1\n2\n");
        CHECK_THROWS_AS(parse_tudataset(tmp.path, "ds"), FormatError);
    }
    SECTION("malformed edge line is rejected") {
        write_triangle_fixture(tmp.path, "ds");
        testutil::write_file(tmp.path / "ds_A.txt", "1, x\n");
        CHECK_THROWS_AS(parse_tudataset(tmp.path, "ds"), FormatError);
    }
}

TEST_CASE("parse round-trip preserves structure") {
    Rng rng(0x0110ull);
    Dataset ds;
    ds.name = "rt";
    for (int i = 0; i < 12; ++i) {
        Graph g = oracles::random_graph(rng, 12);
        ds.graphs.push_back(g);
        ds.labels.push_back(static_cast<int>(rng.below(2)));
    }
    // make both labels appear and map them to original values {5, -5}
    ds.labels[0] = 0;
    ds.labels[1] = 1;
    ds.class_labels = {5, -5};

    testutil::TempDir tmp("roundtrip");
    write_tudataset(ds, tmp.path);
    Dataset back = parse_tudataset(tmp.path, "rt");

    REQUIRE(back.graphs.size() == ds.graphs.size());
    for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
        CHECK(back.graphs[i].node_count() == ds.graphs[i].node_count());
        CHECK(back.graphs[i].edge_count() == ds.graphs[i].edge_count());
        std::multiset<int> before, after;
        for (int v = 0; v < ds.graphs[i].node_count(); ++v) {
            before.insert(ds.graphs[i].degree(v));
            after.insert(back.graphs[i].degree(v));
        }
        CHECK(before == after);
        CHECK(back.class_labels[static_cast<std::size_t>(back.labels[i])] ==
              ds.class_labels[static_cast<std::size_t>(ds.labels[i])]);
    }
}

TEST_CASE("summarize reports extrema and averages") {
    Dataset ds;
    ds.name = "s";
    ds.graphs.push_back(Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}));
    ds.graphs.push_back(Graph::from_edges(5, {{0, 1}}));
    ds.labels = {0, 1};
    ds.class_labels = {1, 2};
    auto s = summarize(ds);
    CHECK(s.graph_count == 2);
    CHECK(s.avg_nodes == Catch::Approx(4.0));
    CHECK(s.avg_edges == Catch::Approx(2.0));
    CHECK(s.max_nodes == 5);
    CHECK(s.min_nodes == 3);
    CHECK(s.max_edges == 3);
    CHECK(s.min_edges == 1);
    CHECK(s.num_classes == 2);
}
