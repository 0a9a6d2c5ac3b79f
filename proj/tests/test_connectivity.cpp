#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "rgbp/connectivity.hpp"
#include "support/oracle.hpp"

using namespace rgbp;

TEST_CASE("small graphs: predicates") {
  Graph tri(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(is_two_vertex_connected(tri));
  CHECK(is_two_edge_connected(tri));

  Graph p3(3, {{0, 1}, {1, 2}});
  CHECK(!is_two_vertex_connected(p3));
  ConnectivityReport rep = report(p3);
  CHECK(rep.connected);
  CHECK(rep.articulation_vertices == std::vector<VertexId>{1});
  CHECK(rep.bridges == std::vector<EdgeId>{0, 1});

  Graph single(2, {{0, 1}});
  CHECK(!is_two_edge_connected(single));  // needs at least two edges
  CHECK(!is_two_vertex_connected(single));

  Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  CHECK(is_two_edge_connected(c4));
  CHECK(is_two_vertex_connected(c4));
  ConnectivityReport c4rep = report(c4);
  CHECK(c4rep.articulation_vertices.empty());
  CHECK(c4rep.bridges.empty());
}

TEST_CASE("bowtie: 2-edge-connected but not 2-vertex-connected") {
  // two triangles sharing one vertex
  Graph bowtie(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}});
  CHECK(is_two_edge_connected(bowtie));
  CHECK(!is_two_vertex_connected(bowtie));
  CHECK(report(bowtie).articulation_vertices == std::vector<VertexId>{0});
}

TEST_CASE("all 64 labeled graphs on 4 vertices: both predicates agree") {
  std::vector<Edge> pairs = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (int mask = 0; mask < 64; ++mask) {
    std::vector<Edge> edges;
    for (int b = 0; b < 6; ++b)
      if ((mask >> b) & 1) edges.push_back(pairs[static_cast<size_t>(b)]);
    Graph g(4, edges);
    CHECK(is_two_vertex_connected(g) == is_two_edge_connected(g));
  }
}

TEST_CASE("2-vertex-connected implies 2-edge-connected") {
  testsupport::Rng rng(7171);
  for (int iter = 0; iter < 2000; ++iter) {
    Graph g = testsupport::random_graph(rng, rng.range(2, 7), rng.range(0, 12));
    if (is_two_vertex_connected(g) && g.edge_count() >= 2) CHECK(is_two_edge_connected(g));
  }
}

TEST_CASE("report matches the deletion oracle on 10000 random graphs") {
  testsupport::Rng rng(424242);
  for (int iter = 0; iter < 10000; ++iter) {
    Graph g = testsupport::random_graph(rng, rng.range(1, 7), rng.range(0, 12));
    ConnectivityReport fast = report(g);
    testsupport::OracleReport slow = testsupport::oracle_report(g);
    REQUIRE(fast.connected == slow.connected);
    REQUIRE(fast.articulation_vertices == slow.articulation_vertices);
    REQUIRE(fast.bridges == slow.bridges);
    CHECK(is_two_vertex_connected(g) == testsupport::oracle_two_vertex_connected(g));
    CHECK(is_two_edge_connected(g) == testsupport::oracle_two_edge_connected(g));
  }
}

TEST_CASE("disconnected input: report covers all components") {
  Graph g(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}});
  ConnectivityReport rep = report(g);
  CHECK(!rep.connected);
  CHECK(rep.articulation_vertices == std::vector<VertexId>{4});
  CHECK(rep.bridges == std::vector<EdgeId>{3, 4});
  CHECK(!is_two_vertex_connected(g));
  CHECK(!is_two_edge_connected(g));
}

TEST_CASE("subgraph checker agrees with the graph predicates") {
  testsupport::Rng rng(99031);
  SubgraphChecker checker;
  for (int iter = 0; iter < 3000; ++iter) {
    Graph g = testsupport::random_graph(rng, rng.range(1, 8), rng.range(0, 14));
    std::vector<std::pair<int, int>> ends;
    for (const Edge& e : g.edges()) ends.push_back({e.u, e.v});
    checker.reset(g.vertex_count(), ends);
    uint64_t mask = 0;
    std::vector<Edge> chosen;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (rng.chance(70)) {
        mask |= 1ull << e;
        chosen.push_back(g.edge(e));
      }
    Graph sub(g.vertex_count(), chosen);
    CHECK(checker.satisfies(mask, Mode::VertexTwoConnected) ==
          is_two_vertex_connected(sub));
    CHECK(checker.satisfies(mask, Mode::EdgeTwoConnected) == is_two_edge_connected(sub));
  }
}
