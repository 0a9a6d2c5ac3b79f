#include "rgbp/core.hpp"

#include <algorithm>

namespace rgbp {

std::string to_string(Mode mode) {
  return mode == Mode::VertexTwoConnected ? "vertex" : "edge";
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "?";
}

Graph::Graph(int vertex_count, const std::vector<Edge>& edges) : vertex_count_(vertex_count) {
  if (vertex_count < 0) throw InputError("negative vertex count");
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    VertexId u = std::min(e.u, e.v);
    VertexId v = std::max(e.u, e.v);
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    if (u < 0 || v >= vertex_count)
      throw InputError("edge endpoint out of range: {" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + "}");
    edges_.push_back({u, v});
  }
  adj_.assign(static_cast<size_t>(vertex_count), {});
  for (EdgeId id = 0; id < edge_count(); ++id) {
    const Edge& e = edges_[static_cast<size_t>(id)];
    adj_[static_cast<size_t>(e.u)].push_back({e.v, id});
    adj_[static_cast<size_t>(e.v)].push_back({e.u, id});
  }
  for (auto& nbrs : adj_) {
    std::sort(nbrs.begin(), nbrs.end());
    for (size_t i = 1; i < nbrs.size(); ++i)
      if (nbrs[i].first == nbrs[i - 1].first)
        throw InputError("duplicate edge {" + std::to_string(nbrs[i].first) + ",...}");
  }
}

int Graph::max_degree() const {
  int d = 0;
  for (VertexId v = 0; v < vertex_count_; ++v) d = std::max(d, degree(v));
  return d;
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v) const {
  if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_) return std::nullopt;
  const auto& nbrs = adj_[static_cast<size_t>(u)];
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), std::pair<VertexId, EdgeId>{v, 0});
  if (it != nbrs.end() && it->first == v) return it->second;
  return std::nullopt;
}

Habitat::Habitat(std::vector<VertexId> vs) : vertices(std::move(vs)) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (vertices.empty()) throw InputError("habitat must contain at least one vertex");
}

bool Habitat::contains(VertexId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

Instance Instance::unit(Graph graph, std::vector<Habitat> habitats, Cost budget, Mode mode) {
  Instance inst;
  inst.cost.assign(static_cast<size_t>(graph.edge_count()), 1);
  inst.forced.assign(static_cast<size_t>(graph.edge_count()), false);
  inst.graph = std::move(graph);
  inst.habitats = std::move(habitats);
  inst.budget = budget;
  inst.mode = mode;
  return inst;
}

std::vector<EdgeId> Instance::forced_ids() const {
  std::vector<EdgeId> ids;
  for (EdgeId e = 0; e < graph.edge_count(); ++e)
    if (forced[static_cast<size_t>(e)]) ids.push_back(e);
  return ids;
}

Cost Instance::forced_cost() const {
  Cost total = 0;
  for (EdgeId e = 0; e < graph.edge_count(); ++e)
    if (forced[static_cast<size_t>(e)]) total += cost[static_cast<size_t>(e)];
  return total;
}

Cost Instance::edge_set_cost(std::span<const EdgeId> edges) const {
  Cost total = 0;
  for (EdgeId e : edges) total += cost[static_cast<size_t>(e)];
  return total;
}

void Instance::validate() const {
  const size_t m = static_cast<size_t>(graph.edge_count());
  if (cost.size() != m) throw InputError("cost map must cover exactly the edge set");
  if (forced.size() != m) throw InputError("forced set must index the edge set");
  for (Cost c : cost)
    if (c < 0) throw InputError("negative edge cost");
  if (budget < 0) throw InputError("negative budget");
  for (const Habitat& h : habitats) {
    if (h.vertices.empty()) throw InputError("empty habitat");
    for (VertexId v : h.vertices)
      if (v < 0 || v >= graph.vertex_count())
        throw InputError("habitat vertex " + std::to_string(v) + " out of range");
  }
}

InstanceStats instance_stats(const Instance& instance) {
  InstanceStats s;
  s.num_habitats = static_cast<int>(instance.habitats.size());
  for (const Habitat& h : instance.habitats) s.eta = std::max(s.eta, h.size());
  s.delta = instance.graph.max_degree();
  int forced_count = 0;
  for (bool f : instance.forced) forced_count += f ? 1 : 0;
  s.num_free_edges = instance.graph.edge_count() - forced_count;
  return s;
}

InducedSubgraph induced_subgraph(const Graph& graph, const Habitat& vertices,
                                 std::span<const EdgeId> selected) {
  InducedSubgraph out;
  out.vertex_map = vertices.vertices;
  for (VertexId v : out.vertex_map)
    if (v < 0 || v >= graph.vertex_count())
      throw InputError("invalid vertex id " + std::to_string(v));

  std::vector<EdgeId> sorted(selected.begin(), selected.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  auto local_of = [&](VertexId v) -> std::optional<VertexId> {
    auto it = std::lower_bound(out.vertex_map.begin(), out.vertex_map.end(), v);
    if (it == out.vertex_map.end() || *it != v) return std::nullopt;
    return static_cast<VertexId>(it - out.vertex_map.begin());
  };

  std::vector<Edge> local_edges;
  for (EdgeId id : sorted) {
    if (id < 0 || id >= graph.edge_count())
      throw InputError("invalid edge id " + std::to_string(id));
    const Edge& e = graph.edge(id);
    auto lu = local_of(e.u), lv = local_of(e.v);
    if (lu && lv) {
      local_edges.push_back({*lu, *lv});
      out.edge_map.push_back(id);
    }
  }
  out.graph = Graph(static_cast<int>(out.vertex_map.size()), local_edges);
  return out;
}

}  // namespace rgbp
