#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "rgbp/connectivity.hpp"
#include "rgbp/preprocess.hpp"
#include "rgbp/solver.hpp"
#include "support/oracle.hpp"

using namespace rgbp;

namespace {

Graph k4() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

Instance unit_instance(Graph g, std::vector<Habitat> hs, Cost budget = 1000,
                       Mode mode = Mode::VertexTwoConnected) {
  return Instance::unit(std::move(g), std::move(hs), budget, mode);
}

// count the feasible family of a habitat by brute force with the test oracle
int oracle_family_size(const Instance& inst, int habitat_index) {
  const Habitat& h = inst.habitats[static_cast<size_t>(habitat_index)];
  std::vector<EdgeId> local;
  for (EdgeId e = 0; e < inst.graph.edge_count(); ++e) {
    const Edge& ed = inst.graph.edge(e);
    if (h.contains(ed.u) && h.contains(ed.v)) local.push_back(e);
  }
  int count = 0;
  for (uint64_t mask = 0; mask < (1ull << local.size()); ++mask) {
    std::vector<bool> selected(static_cast<size_t>(inst.graph.edge_count()), false);
    bool forced_ok = true;
    for (size_t i = 0; i < local.size(); ++i)
      if ((mask >> i) & 1) selected[static_cast<size_t>(local[i])] = true;
    for (size_t i = 0; i < local.size(); ++i)
      if (inst.forced[static_cast<size_t>(local[i])] && !((mask >> i) & 1)) forced_ok = false;
    if (forced_ok && testsupport::oracle_habitat_ok(inst, h, selected)) ++count;
  }
  return count;
}

void check_against_oracle(const Instance& inst) {
  testsupport::ExhaustiveResult oracle = testsupport::exhaustive_optimum(inst);
  Solution sol = solve(inst);
  if (sol.status == SolveStatus::Infeasible) {
    // either structurally infeasible or the forced spend already exceeds k
    CHECK((!oracle.feasible || oracle.optimum > inst.budget));
    return;
  }
  REQUIRE(oracle.feasible);
  CHECK(sol.cost == oracle.optimum);
  CHECK(sol.yes == (oracle.optimum <= inst.budget));
  CHECK(verify(inst, sol.selected).ok == sol.yes);
}

// chain of habitats each sharing exactly one unforced edge with the next
Instance path_shaped_instance(testsupport::Rng& rng, int habitats, bool close_cycle) {
  // habitat i occupies vertices {2i, 2i+1, 2i+2, 2i+3}; consecutive habitats
  // share the edge {2i+2, 2i+3}
  int blocks = habitats;
  int n = close_cycle ? 2 * blocks : 2 * blocks + 2;
  std::vector<Edge> edges;
  auto add_unique = [&](VertexId a, VertexId b) {
    Edge e{std::min(a, b), std::max(a, b)};
    if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
  };
  std::vector<Habitat> hs;
  for (int i = 0; i < blocks; ++i) {
    VertexId a = static_cast<VertexId>(2 * i);
    VertexId b = static_cast<VertexId>(2 * i + 1);
    VertexId c = static_cast<VertexId>((2 * i + 2) % n);
    VertexId d = static_cast<VertexId>((2 * i + 3) % n);
    add_unique(a, b);
    add_unique(c, d);
    add_unique(a, c);
    add_unique(b, d);
    if (rng.chance(50)) add_unique(a, d);
    if (rng.chance(50)) add_unique(b, c);
    hs.push_back(Habitat({a, b, c, d}));
  }
  Instance inst;
  inst.graph = Graph(n, edges);
  inst.cost.resize(static_cast<size_t>(inst.graph.edge_count()));
  for (Cost& c : inst.cost) c = rng.range(1, 5);
  inst.forced.assign(static_cast<size_t>(inst.graph.edge_count()), false);
  for (size_t e = 0; e < inst.forced.size(); ++e)
    if (rng.chance(15)) inst.forced[e] = true;
  inst.habitats = hs;
  inst.budget = 1000;
  inst.mode = rng.chance(50) ? Mode::EdgeTwoConnected : Mode::VertexTwoConnected;
  return inst;
}

}  // namespace

TEST_CASE("feasible family: triangle, K4 and P3") {
  Instance tri = unit_instance(Graph(3, {{0, 1}, {0, 2}, {1, 2}}), {Habitat({0, 1, 2})});
  FeasibleFamily tri_fam = enumerate_feasible(tri, 0);
  CHECK(tri_fam.sets.size() == 1);
  CHECK(tri_fam.sets[0] == 0b111);

  Instance k = unit_instance(k4(), {Habitat({0, 1, 2, 3})});
  FeasibleFamily k_fam = enumerate_feasible(k, 0);
  CHECK(k_fam.sets.size() == 10);  // full K4, six K4-e, three 4-cycles
  CHECK(oracle_family_size(k, 0) == 10);
  CHECK(std::is_sorted(k_fam.sets.begin(), k_fam.sets.end()));

  Instance p3 = unit_instance(Graph(3, {{0, 1}, {1, 2}}), {Habitat({0, 1, 2})});
  CHECK(enumerate_feasible(p3, 0).sets.empty());
}

TEST_CASE("feasible family: forced edges and the size bound") {
  testsupport::Rng rng(60901);
  for (int iter = 0; iter < 200; ++iter) {
    Instance inst = testsupport::random_instance(rng);
    InstanceStats stats = instance_stats(inst);
    for (size_t hi = 0; hi < inst.habitats.size(); ++hi) {
      FeasibleFamily fam = enumerate_feasible(inst, static_cast<int>(hi));
      // |S(H)| <= 2^(eta*delta/2)
      int exponent = std::min(60, stats.eta * stats.delta / 2);
      CHECK(fam.sets.size() <= (1ull << exponent));
      CHECK(static_cast<int>(fam.sets.size()) ==
            oracle_family_size(inst, static_cast<int>(hi)));
      for (uint64_t s : fam.sets) CHECK((s & fam.forced_mask) == fam.forced_mask);
    }
  }
}

TEST_CASE("dp_path: single habitat base case") {
  Instance k = unit_instance(k4(), {Habitat({0, 1, 2, 3})});
  std::vector<int> order{0};
  Solution sol = dp_path(k, order);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.cost == 4);  // cheapest 2-connected spanning subgraph of K4 is a C4
}

TEST_CASE("dp_path: two K4 habitats sharing one unforced edge") {
  // K4 on {0,1,2,3} and K4 on {2,3,4,5} share edge {2,3}
  Graph g(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
              {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}});
  Instance inst = unit_instance(std::move(g), {Habitat({0, 1, 2, 3}), Habitat({2, 3, 4, 5})});
  std::vector<int> order{0, 1};
  Solution sol = dp_path(inst, order);
  REQUIRE(sol.status == SolveStatus::Optimal);
  testsupport::ExhaustiveResult oracle = testsupport::exhaustive_optimum(inst);
  CHECK(sol.cost == oracle.optimum);
  CHECK(sol.cost == 7);  // two 4-cycles reusing the shared edge
}

TEST_CASE("dp table invariants: base row, recurrence, tie-breaking") {
  Graph g(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
              {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}});
  Instance inst = unit_instance(std::move(g), {Habitat({0, 1, 2, 3}), Habitat({2, 3, 4, 5})});
  inst.cost[0] = 3;  // non-uniform costs make ties and overlaps interesting
  inst.cost[7] = 2;
  std::vector<int> order{0, 1};
  DpTable table = dp_path_table(inst, order);
  REQUIRE(table.rows.size() == 2);

  auto set_cost = [&](const FeasibleFamily& fam, uint64_t mask) {
    Cost c = 0;
    for (size_t i = 0; i < fam.local_edges.size(); ++i)
      if ((mask >> i) & 1) c += inst.cost[static_cast<size_t>(fam.local_edges[i])];
    return c;
  };

  // D[1, F_1] = c(F_1)
  for (size_t j = 0; j < table.families[0].sets.size(); ++j) {
    CHECK(table.rows[0][j].value == set_cost(table.families[0], table.families[0].sets[j]));
    CHECK(table.rows[0][j].back == -1);
  }
  // D[2, F_2] = min over F_1 of D[1, F_1] + c(F_2 \ F_1); lowest mask wins ties
  for (size_t j = 0; j < table.families[1].sets.size(); ++j) {
    Cost best = -1;
    int best_back = -1;
    for (size_t p = 0; p < table.families[0].sets.size(); ++p) {
      std::vector<EdgeId> prev_edges =
          table.families[0].edges_of(table.families[0].sets[p]);
      Cost diff = 0;
      for (size_t i = 0; i < table.families[1].local_edges.size(); ++i)
        if ((table.families[1].sets[j] >> i) & 1 &&
            !std::binary_search(prev_edges.begin(), prev_edges.end(),
                                table.families[1].local_edges[i]))
          diff += inst.cost[static_cast<size_t>(table.families[1].local_edges[i])];
      Cost cand = table.rows[0][p].value + diff;
      if (best < 0 || cand < best) {
        best = cand;
        best_back = static_cast<int>(p);
      }
    }
    CHECK(table.rows[1][j].value == best);
    CHECK(table.rows[1][j].back == best_back);
  }
}

TEST_CASE("dp_path rejects orders that are not paths") {
  Graph g(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  Instance inst = unit_instance(std::move(g), {Habitat({0, 1, 2}), Habitat({3, 4, 5})});
  std::vector<int> order{0, 1};
  CHECK_THROWS_AS(dp_path(inst, order), InputError);  // not meta-adjacent
}

TEST_CASE("dp_cycle: cycle of three triangle habitats") {
  Instance inst = unit_instance(k4(), {Habitat({0, 1, 2}), Habitat({1, 2, 3}),
                                       Habitat({0, 1, 3})});
  std::vector<int> order{0, 1, 2};
  Solution sol = dp_cycle(inst, order);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.cost == 6);  // the families are singletons; every listed edge needed
  CHECK(sol.selected.size() == 6);
}

TEST_CASE("dp_cycle: empty family reports infeasible") {
  // habitat {0,1,3} induces a path (edge {0,3} missing), so its family is empty
  Graph g(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
  Instance inst = unit_instance(std::move(g), {Habitat({0, 1, 2}), Habitat({1, 2, 3}),
                                               Habitat({0, 1, 3})});
  CHECK(enumerate_feasible(inst, 2).sets.empty());
  std::vector<int> order{0, 1, 2};
  Solution sol = dp_cycle(inst, order);
  CHECK(sol.status == SolveStatus::Infeasible);
}

TEST_CASE("dp matches exhaustive search on random path and cycle instances") {
  testsupport::Rng rng(777001);
  int paths = 0, cycles = 0;
  while (paths < 40) {
    Instance inst = path_shaped_instance(rng, rng.range(2, 4), false);
    BasicHabitatGraph hg = build(inst);
    ComponentDecomposition d = decompose(inst, hg);
    if (d.components.size() != 1 || d.components[0].shape != ComponentShape::Path) continue;
    ++paths;
    Solution sol = dp_path(inst, d.components[0].ordered_habitats);
    testsupport::ExhaustiveResult oracle = testsupport::exhaustive_optimum(inst);
    REQUIRE((sol.status != SolveStatus::Infeasible) == oracle.feasible);
    if (oracle.feasible) CHECK(sol.cost == oracle.optimum);
  }
  while (cycles < 25) {
    Instance inst = path_shaped_instance(rng, rng.range(3, 5), true);
    BasicHabitatGraph hg = build(inst);
    ComponentDecomposition d = decompose(inst, hg);
    if (d.components.size() != 1 || d.components[0].shape != ComponentShape::Cycle) continue;
    ++cycles;
    Solution sol = dp_cycle(inst, d.components[0].ordered_habitats);
    testsupport::ExhaustiveResult oracle = testsupport::exhaustive_optimum(inst);
    REQUIRE((sol.status != SolveStatus::Infeasible) == oracle.feasible);
    if (oracle.feasible) CHECK(sol.cost == oracle.optimum);
  }
}

TEST_CASE("solve_component: singleton K4 at unit costs") {
  Instance k = unit_instance(k4(), {Habitat({0, 1, 2, 3})}, 4);
  Solution sol = solve_component(k, ComponentShape::Singleton);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.cost == 4);
  CHECK(sol.yes);
}

TEST_CASE("branch_and_bound: all edges forced and satisfied") {
  Graph g(3, {{0, 1}, {0, 2}, {1, 2}});
  Instance inst = unit_instance(std::move(g), {Habitat({0, 1, 2})}, 3);
  for (size_t e = 0; e < inst.forced.size(); ++e) inst.forced[e] = true;
  Solution sol = branch_and_bound(inst);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.cost == 3);
  CHECK(sol.selected == std::vector<EdgeId>{0, 1, 2});
}

TEST_CASE("branch_and_bound agrees with exhaustive search on 500 components") {
  testsupport::Rng rng(424243);
  int compared = 0;
  int iters = 0;
  while (compared < 500 && iters < 5000) {
    ++iters;
    Instance inst = testsupport::random_instance(rng);
    testsupport::ExhaustiveResult oracle = testsupport::exhaustive_optimum(inst);
    Solution sol = branch_and_bound(inst);
    REQUIRE((sol.status != SolveStatus::Infeasible) == oracle.feasible);
    if (oracle.feasible) {
      ++compared;
      CHECK(sol.cost == oracle.optimum);
      CHECK(verify(inst, sol.selected).diagnostic != "forced edge missing");
    }
  }
  CHECK(compared == 500);
}

TEST_CASE("exhaustive and branch-and-bound dispatch agree") {
  testsupport::Rng rng(5150);
  for (int iter = 0; iter < 80; ++iter) {
    Instance inst = testsupport::random_instance(rng);
    SolverOptions always_exhaustive{30};
    SolverOptions never_exhaustive{0};
    Solution a = solve(inst, always_exhaustive);
    Solution b = solve(inst, never_exhaustive);
    CHECK(a.status == b.status);
    if (a.status != SolveStatus::Infeasible) CHECK(a.cost == b.cost);
  }
}

TEST_CASE("solve: trivial cases") {
  // no habitats, nothing forced: cost 0, yes
  Instance empty = unit_instance(Graph(4, {{0, 1}, {1, 2}}), {}, 0);
  Solution sol = solve(empty);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.cost == 0);
  CHECK(sol.yes);

  // max degree 2 with a habitat that cannot be 2-connected: no
  Instance path = unit_instance(Graph(3, {{0, 1}, {1, 2}}), {Habitat({0, 1, 2})}, 10);
  CHECK(solve(path).status == SolveStatus::Infeasible);
}

TEST_CASE("solve matches the oracle on random instances") {
  testsupport::Rng rng(8211);
  for (int iter = 0; iter < 200; ++iter) check_against_oracle(testsupport::random_instance(rng));
}

TEST_CASE("solve routes a reduced K4 ring through the cycle DP") {
  // ring of K4 blocks glued on opposite edges: nothing gets forced, the meta
  // graph is a cycle, and the optimum must match the oracle
  testsupport::Rng rng(515151);
  for (int iter = 0; iter < 10; ++iter) {
    int blocks = rng.range(3, 4);
    int n = 2 * blocks;
    std::vector<Edge> edges;
    auto add_unique = [&](VertexId a, VertexId b) {
      Edge e{std::min(a, b), std::max(a, b)};
      if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
    };
    std::vector<Habitat> hs;
    for (int i = 0; i < blocks; ++i) {
      VertexId a = static_cast<VertexId>(2 * i);
      VertexId b = static_cast<VertexId>(2 * i + 1);
      VertexId c = static_cast<VertexId>((2 * i + 2) % n);
      VertexId d = static_cast<VertexId>((2 * i + 3) % n);
      add_unique(a, b);
      add_unique(c, d);
      add_unique(a, c);
      add_unique(a, d);
      add_unique(b, c);
      add_unique(b, d);
      hs.push_back(Habitat({a, b, c, d}));
    }
    Instance inst;
    inst.graph = Graph(n, edges);
    inst.cost.resize(static_cast<size_t>(inst.graph.edge_count()));
    for (Cost& c : inst.cost) c = rng.range(1, 5);
    inst.forced.assign(static_cast<size_t>(inst.graph.edge_count()), false);
    inst.habitats = hs;
    inst.budget = 1000;
    inst.mode = rng.chance(50) ? Mode::EdgeTwoConnected : Mode::VertexTwoConnected;

    ReduceResult red = reduce(inst);
    REQUIRE(!red.infeasible);
    CHECK(red.instance == inst);  // K4 blocks: already reduced
    Solution sol = solve(inst);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.cost == testsupport::exhaustive_optimum(inst).optimum);
    bool used_cycle_dp = false;
    for (const TraceRecord& t : sol.trace)
      if (t.origin.find("(cycle)") != std::string::npos) used_cycle_dp = true;
    CHECK(used_cycle_dp);
  }
}

TEST_CASE("solve dispatches the path DP on the two-component example") {
  Graph g(7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {1, 5},
              {1, 6}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {4, 5}, {5, 6}});
  Instance inst = Instance::unit(std::move(g),
                                 {Habitat({0, 1, 3, 4}), Habitat({0, 1, 2, 4}),
                                  Habitat({1, 2, 4, 5}), Habitat({1, 2, 5, 6})},
                                 15, Mode::VertexTwoConnected);
  for (auto [u, v] : {std::pair{1, 4}, std::pair{1, 2}, std::pair{2, 4}})
    inst.forced[static_cast<size_t>(*inst.graph.find_edge(u, v))] = true;
  Solution sol = solve(inst);
  REQUIRE(sol.status == SolveStatus::Optimal);
  testsupport::ExhaustiveResult oracle = testsupport::exhaustive_optimum(inst);
  CHECK(sol.cost == oracle.optimum);
  CHECK(sol.yes);
  bool used_path_dp = false;
  for (const TraceRecord& t : sol.trace)
    if (t.origin.find("(path)") != std::string::npos) used_path_dp = true;
  CHECK(used_path_dp);
}

TEST_CASE("verify diagnostics") {
  Instance inst = unit_instance(k4(), {Habitat({0, 1, 2, 3})}, 6);
  inst.forced[0] = true;
  std::vector<EdgeId> all{0, 1, 2, 3, 4, 5};
  CHECK(verify(inst, all).ok);

  std::vector<EdgeId> missing_forced{1, 2, 3, 4, 5};
  VerifyResult r = verify(inst, missing_forced);
  CHECK(!r.ok);
  CHECK(r.diagnostic == "forced edge missing: 0");

  inst.budget = 3;
  VerifyResult over = verify(inst, all);
  CHECK(!over.ok);
  CHECK(over.diagnostic == "budget exceeded");

  inst.budget = 6;
  std::vector<EdgeId> too_few{0, 1, 2};
  VerifyResult bad = verify(inst, too_few);
  CHECK(!bad.ok);
  CHECK(bad.diagnostic.find("habitat 0") != std::string::npos);
}

TEST_CASE("solve self-verifies feasible outputs") {
  testsupport::Rng rng(140989);
  for (int iter = 0; iter < 120; ++iter) {
    Instance inst = testsupport::random_instance(rng);
    Solution sol = solve(inst);
    if (sol.status == SolveStatus::Infeasible) continue;
    VerifyResult r = verify(inst, sol.selected);
    CHECK((r.ok || r.diagnostic == "budget exceeded"));
  }
}
