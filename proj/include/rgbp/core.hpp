#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rgbp {

using VertexId = int32_t;
using EdgeId = int32_t;
using Cost = int64_t;

// Connectivity requirement imposed on every habitat's selected subgraph.
enum class Mode { VertexTwoConnected, EdgeTwoConnected };

std::string to_string(Mode mode);

// Thrown when an input violates a documented precondition.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a habitat exceeds the 64-bit local edge mask width.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Endpoints are stored normalized, u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  bool operator==(const Edge&) const = default;
  bool operator<(const Edge& o) const { return u != o.u ? u < o.u : v < o.v; }
};

// Undirected simple graph. Edges carry stable ids (index into the edge list);
// all cost/forced bookkeeping in Instance is keyed by these ids.
class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, const std::vector<Edge>& edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<size_t>(e)]; }
  const std::vector<Edge>& edges() const { return edges_; }

  // (neighbor, edge id) pairs, sorted by neighbor.
  std::span<const std::pair<VertexId, EdgeId>> neighbors(VertexId v) const {
    return adj_[static_cast<size_t>(v)];
  }
  int degree(VertexId v) const { return static_cast<int>(adj_[static_cast<size_t>(v)].size()); }
  int max_degree() const;

  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;

  bool operator==(const Graph& o) const {
    return vertex_count_ == o.vertex_count_ && edges_ == o.edges_;
  }

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj_;
};

// A habitat is a nonempty vertex subset; stored sorted and duplicate-free.
struct Habitat {
  std::vector<VertexId> vertices;

  Habitat() = default;
  explicit Habitat(std::vector<VertexId> vs);

  int size() const { return static_cast<int>(vertices.size()); }
  bool contains(VertexId v) const;
  bool operator==(const Habitat&) const = default;
};

struct Instance {
  Graph graph;
  std::vector<Cost> cost;      // per edge id
  std::vector<bool> forced;    // per edge id
  std::vector<Habitat> habitats;
  Cost budget = 0;
  Mode mode = Mode::VertexTwoConnected;

  // B-RGBP: unit costs, no forced edges.
  static Instance unit(Graph graph, std::vector<Habitat> habitats, Cost budget, Mode mode);

  std::vector<EdgeId> forced_ids() const;
  Cost forced_cost() const;
  Cost edge_set_cost(std::span<const EdgeId> edges) const;

  // Checks the type invariants; throws InputError on violation.
  void validate() const;

  bool operator==(const Instance&) const = default;
};

struct InstanceStats {
  int eta = 0;          // max habitat size, 0 if no habitats
  int delta = 0;        // max degree
  int num_habitats = 0;
  int num_free_edges = 0;  // |E| - |F_in|

  bool operator==(const InstanceStats&) const = default;
};

InstanceStats instance_stats(const Instance& instance);

// Result of restricting a graph to a habitat: the relabeled graph plus the
// maps back to the parent's vertex/edge ids.
struct InducedSubgraph {
  Graph graph;
  std::vector<VertexId> vertex_map;  // local -> parent vertex
  std::vector<EdgeId> edge_map;      // local -> parent edge id
};

// Graph on `vertices` with exactly the edges of `selected` that have both
// endpoints inside; local ids follow the habitat's sorted vertex order and
// ascending parent edge ids.
InducedSubgraph induced_subgraph(const Graph& graph, const Habitat& vertices,
                                 std::span<const EdgeId> selected);

enum class SolveStatus { Optimal, Feasible, Infeasible };

std::string to_string(SolveStatus status);

struct TraceRecord {
  std::string origin;           // which rule/solver produced the edges
  std::vector<EdgeId> edges;
};

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<EdgeId> selected;  // sorted; contains all forced edges unless Infeasible
  Cost cost = 0;
  bool yes = false;              // cost <= budget and status != Infeasible
  std::vector<TraceRecord> trace;
};

}  // namespace rgbp
