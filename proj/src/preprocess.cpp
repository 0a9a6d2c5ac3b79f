#include "rgbp/preprocess.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "rgbp/connectivity.hpp"

namespace rgbp {

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::RR1: return "RR1";
    case Rule::RR2: return "RR2";
    case Rule::RR3: return "RR3";
    case Rule::RR4: return "RR4";
    case Rule::RR5: return "RR5";
  }
  return "?";
}

Cost ReductionTrace::total_budget_delta() const {
  Cost total = 0;
  for (const ReductionStep& s : steps) total += s.budget_delta;
  return total;
}

std::string ReductionTrace::to_text() const {
  std::ostringstream out;
  for (const ReductionStep& s : steps) {
    out << to_string(s.rule);
    if (!s.habitats.empty()) {
      out << " habitats";
      for (int h : s.habitats) out << ' ' << h;
    }
    if (!s.edges.empty()) {
      out << " edges";
      for (EdgeId e : s.edges) out << ' ' << e;
    }
    out << ' ' << s.budget_delta << '\n';
  }
  return out.str();
}

namespace {

// Edge ids of G[H], ascending, with local endpoint indices.
struct HabitatEdges {
  std::vector<EdgeId> ids;
  std::vector<std::pair<int, int>> ends;
};

HabitatEdges habitat_edges(const Graph& g, const Habitat& h) {
  HabitatEdges out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (h.contains(ed.u) && h.contains(ed.v)) {
      auto lu = std::lower_bound(h.vertices.begin(), h.vertices.end(), ed.u);
      auto lv = std::lower_bound(h.vertices.begin(), h.vertices.end(), ed.v);
      out.ids.push_back(e);
      out.ends.push_back({static_cast<int>(lu - h.vertices.begin()),
                          static_cast<int>(lv - h.vertices.begin())});
    }
  }
  return out;
}

bool habitat_graph_satisfies(const Graph& g, const Habitat& h, Mode mode) {
  HabitatEdges he = habitat_edges(g, h);
  if (he.ids.size() > 64) {
    // fall back to the graph-level predicate for oversized habitats
    std::vector<EdgeId> all(he.ids.begin(), he.ids.end());
    return satisfies(induced_subgraph(g, h, all).graph, mode);
  }
  SubgraphChecker checker;
  checker.reset(h.size(), he.ends);
  uint64_t full = he.ids.size() == 64 ? ~0ull : ((1ull << he.ids.size()) - 1);
  return checker.satisfies(full, mode);
}

}  // namespace

std::optional<int> rr1_trivial_no(const Instance& instance) {
  for (size_t i = 0; i < instance.habitats.size(); ++i)
    if (!habitat_graph_satisfies(instance.graph, instance.habitats[i], instance.mode))
      return static_cast<int>(i);
  return std::nullopt;
}

Instance rr2_dedupe(const Instance& instance, ReductionTrace* trace) {
  std::vector<int> drop;
  for (size_t i = 0; i < instance.habitats.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (instance.habitats[i] == instance.habitats[j]) {
        drop.push_back(static_cast<int>(i));
        break;
      }
  if (drop.empty()) return instance;
  Instance out = instance;
  std::sort(drop.rbegin(), drop.rend());
  for (int i : drop) out.habitats.erase(out.habitats.begin() + i);
  if (trace) trace->steps.push_back({Rule::RR2, drop, {}, 0});
  return out;
}

Instance rr3_force_edges(const Instance& instance, ReductionTrace* trace) {
  // Forcing depends only on G[H], never on the forced set, so a single pass
  // over all habitats reaches the rule's fixpoint.
  std::vector<EdgeId> newly;
  Instance out = instance;
  SubgraphChecker checker;
  for (const Habitat& h : instance.habitats) {
    HabitatEdges he = habitat_edges(instance.graph, h);
    if (he.ids.size() > 64) {
      // beyond the mask width: per-edge deletion on the induced graph
      InducedSubgraph sub = induced_subgraph(instance.graph, h, he.ids);
      for (size_t i = 0; i < he.ids.size(); ++i) {
        EdgeId e = he.ids[i];
        if (out.forced[static_cast<size_t>(e)]) continue;
        std::vector<Edge> rest;
        for (EdgeId j = 0; j < sub.graph.edge_count(); ++j)
          if (static_cast<size_t>(j) != i) rest.push_back(sub.graph.edge(j));
        if (!satisfies(Graph(sub.graph.vertex_count(), rest), instance.mode)) {
          out.forced[static_cast<size_t>(e)] = true;
          newly.push_back(e);
        }
      }
      continue;
    }
    checker.reset(h.size(), he.ends);
    uint64_t full = he.ids.size() == 64 ? ~0ull : ((1ull << he.ids.size()) - 1);
    for (size_t i = 0; i < he.ids.size(); ++i) {
      EdgeId e = he.ids[i];
      if (out.forced[static_cast<size_t>(e)]) continue;
      if (!checker.satisfies(full & ~(1ull << i), instance.mode)) {
        out.forced[static_cast<size_t>(e)] = true;
        newly.push_back(e);
      }
    }
  }
  if (newly.empty()) return instance;
  std::sort(newly.begin(), newly.end());
  if (trace) trace->steps.push_back({Rule::RR3, {}, newly, 0});
  return out;
}

Instance rr4_drop_solved(const Instance& instance, ReductionTrace* trace) {
  std::vector<int> drop;
  SubgraphChecker checker;
  for (size_t i = 0; i < instance.habitats.size(); ++i) {
    const Habitat& h = instance.habitats[i];
    HabitatEdges he = habitat_edges(instance.graph, h);
    if (he.ids.size() > 64) {
      if (satisfies(induced_subgraph(instance.graph, h, instance.forced_ids()).graph,
                    instance.mode))
        drop.push_back(static_cast<int>(i));
      continue;
    }
    checker.reset(h.size(), he.ends);
    uint64_t forced_mask = 0;
    for (size_t b = 0; b < he.ids.size(); ++b)
      if (instance.forced[static_cast<size_t>(he.ids[b])]) forced_mask |= 1ull << b;
    if (checker.satisfies(forced_mask, instance.mode)) drop.push_back(static_cast<int>(i));
  }
  if (drop.empty()) return instance;
  Instance out = instance;
  std::sort(drop.rbegin(), drop.rend());
  for (int i : drop) out.habitats.erase(out.habitats.begin() + i);
  if (trace) trace->steps.push_back({Rule::RR4, drop, {}, 0});
  return out;
}

std::optional<Instance> rr5_drop_unused_edges(const Instance& instance, ReductionTrace* trace,
                                              std::vector<EdgeId>* edge_origin) {
  const int m = instance.graph.edge_count();
  std::vector<bool> used(static_cast<size_t>(m), false);
  for (const Habitat& h : instance.habitats)
    for (EdgeId e = 0; e < m; ++e) {
      const Edge& ed = instance.graph.edge(e);
      if (h.contains(ed.u) && h.contains(ed.v)) used[static_cast<size_t>(e)] = true;
    }
  std::vector<EdgeId> drop;
  for (EdgeId e = m - 1; e >= 0; --e)
    if (!used[static_cast<size_t>(e)]) drop.push_back(e);
  if (drop.empty()) return instance;

  Cost delta = 0;
  for (EdgeId e : drop)
    if (instance.forced[static_cast<size_t>(e)]) delta -= instance.cost[static_cast<size_t>(e)];

  Instance out;
  out.mode = instance.mode;
  out.budget = instance.budget + delta;
  out.habitats = instance.habitats;
  std::vector<Edge> kept_edges;
  std::vector<EdgeId> kept_ids;
  for (EdgeId e = 0; e < m; ++e)
    if (used[static_cast<size_t>(e)]) {
      kept_edges.push_back(instance.graph.edge(e));
      kept_ids.push_back(e);
    }
  out.graph = Graph(instance.graph.vertex_count(), kept_edges);
  out.cost.reserve(kept_ids.size());
  out.forced.reserve(kept_ids.size());
  for (EdgeId e : kept_ids) {
    out.cost.push_back(instance.cost[static_cast<size_t>(e)]);
    out.forced.push_back(instance.forced[static_cast<size_t>(e)]);
  }
  if (edge_origin) {
    std::vector<EdgeId> composed;
    composed.reserve(kept_ids.size());
    for (EdgeId e : kept_ids) composed.push_back((*edge_origin)[static_cast<size_t>(e)]);
    *edge_origin = std::move(composed);
  }
  if (trace) trace->steps.push_back({Rule::RR5, {}, drop, delta});
  if (out.budget < 0) return std::nullopt;
  return out;
}

ReduceResult reduce(const Instance& instance) {
  ReduceResult result;
  result.instance = instance;
  result.edge_origin.resize(static_cast<size_t>(instance.graph.edge_count()));
  for (EdgeId e = 0; e < instance.graph.edge_count(); ++e)
    result.edge_origin[static_cast<size_t>(e)] = e;

  // Rule order per application: RR1, RR2, RR3, RR4, RR5, looped to fixpoint.
  bool changed = true;
  while (changed) {
    changed = false;
    if (auto witness = rr1_trivial_no(result.instance)) {
      result.infeasible = true;
      result.witness_habitat = *witness;
      result.infeasible_reason =
          "habitat " + std::to_string(*witness) + " induces a graph that is not 2-" +
          (result.instance.mode == Mode::VertexTwoConnected ? "vertex" : "edge") + "-connected";
      result.trace.steps.push_back({Rule::RR1, {*witness}, {}, 0});
      return result;
    }
    size_t steps_before = result.trace.steps.size();
    result.instance = rr2_dedupe(result.instance, &result.trace);
    result.instance = rr3_force_edges(result.instance, &result.trace);
    result.instance = rr4_drop_solved(result.instance, &result.trace);
    std::vector<EdgeId> origin_before = result.edge_origin;
    std::vector<bool> forced_before = result.instance.forced;
    auto after5 = rr5_drop_unused_edges(result.instance, &result.trace, &result.edge_origin);
    if (result.trace.steps.size() != steps_before &&
        result.trace.steps.back().rule == Rule::RR5) {
      for (EdgeId e : result.trace.steps.back().edges)
        if (forced_before[static_cast<size_t>(e)])
          result.deleted_forced.push_back(origin_before[static_cast<size_t>(e)]);
    }
    if (!after5) {
      result.infeasible = true;
      result.infeasible_reason = "forced spend exceeds budget";
      return result;
    }
    result.instance = std::move(*after5);
    changed = result.trace.steps.size() != steps_before;
  }
  std::sort(result.deleted_forced.begin(), result.deleted_forced.end());
  return result;
}

Instance replay(const Instance& instance, const ReductionTrace& trace) {
  Instance cur = instance;
  for (const ReductionStep& s : trace.steps) {
    switch (s.rule) {
      case Rule::RR1:
        break;  // terminal marker, instance unchanged
      case Rule::RR2:
      case Rule::RR4: {
        std::vector<int> drop = s.habitats;
        std::sort(drop.rbegin(), drop.rend());
        for (int i : drop) cur.habitats.erase(cur.habitats.begin() + i);
        break;
      }
      case Rule::RR3:
        for (EdgeId e : s.edges) cur.forced[static_cast<size_t>(e)] = true;
        break;
      case Rule::RR5: {
        std::vector<bool> dead(static_cast<size_t>(cur.graph.edge_count()), false);
        for (EdgeId e : s.edges) dead[static_cast<size_t>(e)] = true;
        std::vector<Edge> kept;
        std::vector<Cost> cost;
        std::vector<bool> forced;
        for (EdgeId e = 0; e < cur.graph.edge_count(); ++e)
          if (!dead[static_cast<size_t>(e)]) {
            kept.push_back(cur.graph.edge(e));
            cost.push_back(cur.cost[static_cast<size_t>(e)]);
            forced.push_back(cur.forced[static_cast<size_t>(e)]);
          }
        cur.graph = Graph(cur.graph.vertex_count(), kept);
        cur.cost = std::move(cost);
        cur.forced = std::move(forced);
        cur.budget += s.budget_delta;
        break;
      }
    }
  }
  return cur;
}

}  // namespace rgbp
