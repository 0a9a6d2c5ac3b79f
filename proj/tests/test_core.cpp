#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "rgbp/core.hpp"
#include "support/oracle.hpp"

using namespace rgbp;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {0, 2}, {1, 2}}); }

// the seven-vertex example instance with four overlapping K4 habitats
Instance fig_instance() {
  Graph g(7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {1, 5},
              {1, 6}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {4, 5}, {5, 6}});
  Instance inst = Instance::unit(std::move(g),
                                 {Habitat({0, 1, 3, 4}), Habitat({0, 1, 2, 4}),
                                  Habitat({1, 2, 4, 5}), Habitat({1, 2, 5, 6})},
                                 15, Mode::VertexTwoConnected);
  for (auto [u, v] : {std::pair{1, 4}, std::pair{1, 2}, std::pair{2, 4}})
    inst.forced[static_cast<size_t>(*inst.graph.find_edge(u, v))] = true;
  return inst;
}

}  // namespace

TEST_CASE("graph rejects self-loops, duplicates and bad endpoints") {
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), InputError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), InputError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), InputError);
  CHECK_THROWS_AS(Graph(-1, {}), InputError);
}

TEST_CASE("adjacency agrees with the edge list") {
  Graph g(5, {{0, 1}, {0, 3}, {1, 2}, {2, 3}, {3, 4}});
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    CHECK(g.find_edge(ed.u, ed.v) == e);
    CHECK(g.find_edge(ed.v, ed.u) == e);
    bool found = false;
    for (auto [nb, id] : g.neighbors(ed.u))
      if (nb == ed.v && id == e) found = true;
    CHECK(found);
  }
  CHECK(!g.find_edge(0, 4));
  CHECK(g.degree(3) == 3);
  CHECK(g.max_degree() == 3);
}

TEST_CASE("induced_subgraph identity and restriction") {
  Graph tri = triangle();
  std::vector<EdgeId> all{0, 1, 2};

  InducedSubgraph full = induced_subgraph(tri, Habitat({0, 1, 2}), all);
  CHECK(full.graph.vertex_count() == 3);
  CHECK(full.graph.edge_count() == 3);
  CHECK(full.vertex_map == std::vector<VertexId>{0, 1, 2});
  CHECK(full.edge_map == std::vector<EdgeId>{0, 1, 2});
  for (EdgeId e = 0; e < 3; ++e) CHECK(full.graph.edge(e) == tri.edge(e));

  InducedSubgraph pair = induced_subgraph(tri, Habitat({0, 1}), all);
  CHECK(pair.graph.vertex_count() == 2);
  CHECK(pair.graph.edge_count() == 1);
  CHECK(pair.graph.edge(0) == Edge{0, 1});

  CHECK_THROWS_AS(induced_subgraph(tri, Habitat({0, 5}), all), InputError);
}

TEST_CASE("example instance: every habitat induces a K4") {
  // each of the four overlapping habitats induces the complete graph on its
  // four vertices, which is what keeps the instance reduced
  Instance inst = fig_instance();
  std::vector<EdgeId> all(static_cast<size_t>(inst.graph.edge_count()));
  for (EdgeId e = 0; e < inst.graph.edge_count(); ++e) all[static_cast<size_t>(e)] = e;
  for (const Habitat& h : inst.habitats) {
    InducedSubgraph sub = induced_subgraph(inst.graph, h, all);
    CHECK(sub.graph.vertex_count() == 4);
    CHECK(sub.graph.edge_count() == 6);
  }
}

TEST_CASE("induced subgraph is monotone in the selected set") {
  testsupport::Rng rng(20240901);
  for (int iter = 0; iter < 200; ++iter) {
    Graph g = testsupport::random_graph(rng, rng.range(3, 7), rng.range(2, 12));
    std::vector<VertexId> hv;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (rng.chance(60)) hv.push_back(v);
    if (hv.empty()) hv.push_back(0);
    Habitat h(hv);
    std::vector<EdgeId> small, large;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      bool in_large = rng.chance(70);
      if (in_large) {
        large.push_back(e);
        if (rng.chance(50)) small.push_back(e);
      }
    }
    auto sub_small = induced_subgraph(g, h, small);
    auto sub_large = induced_subgraph(g, h, large);
    for (EdgeId e : sub_small.edge_map)
      CHECK(std::find(sub_large.edge_map.begin(), sub_large.edge_map.end(), e) !=
            sub_large.edge_map.end());
  }
}

TEST_CASE("instance_stats") {
  Graph g(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}});
  Instance inst = Instance::unit(
      std::move(g), {Habitat({0, 1, 2}), Habitat({2, 3, 4, 5}), Habitat({5, 6, 7, 8})}, 8,
      Mode::VertexTwoConnected);
  inst.forced[0] = true;
  inst.forced[3] = true;
  InstanceStats s = instance_stats(inst);
  CHECK(s.eta == 4);
  CHECK(s.delta == 2);
  CHECK(s.num_habitats == 3);
  CHECK(s.num_free_edges == 6);
  CHECK(instance_stats(inst) == s);  // pure

  Instance empty = Instance::unit(Graph(2, {{0, 1}}), {}, 1, Mode::VertexTwoConnected);
  CHECK(instance_stats(empty).eta == 0);
}

TEST_CASE("habitat normalization and validation") {
  Habitat h(std::vector<VertexId>{3, 1, 2, 1});
  CHECK(h.vertices == std::vector<VertexId>{1, 2, 3});
  CHECK(h.contains(2));
  CHECK(!h.contains(0));
  CHECK_THROWS_AS(Habitat(std::vector<VertexId>{}), InputError);

  Instance inst = Instance::unit(triangle(), {Habitat({0, 1, 5})}, 3, Mode::VertexTwoConnected);
  CHECK_THROWS_AS(inst.validate(), InputError);
}
