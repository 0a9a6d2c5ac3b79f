#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rgbp/core.hpp"

namespace rgbp {

struct ConnectivityReport {
  bool connected = false;
  std::vector<VertexId> articulation_vertices;  // sorted
  std::vector<EdgeId> bridges;                  // sorted
};

// One DFS-lowpoint pass over all components; articulation vertices and bridges
// are reported even when the graph is disconnected.
ConnectivityReport report(const Graph& graph);

// |V| >= 3, connected, no articulation vertex.
bool is_two_vertex_connected(const Graph& graph);

// |E| >= 2, connected, no bridge.
bool is_two_edge_connected(const Graph& graph);

bool satisfies(const Graph& graph, Mode mode);

// Repeated 2-connectivity checks over one small edge universe (a habitat's
// induced edge list) without per-call allocation. Local edges are indexed by
// bit position in a 64-bit mask.
class SubgraphChecker {
 public:
  // n local vertices, ends[i] = local endpoints of local edge i (ends.size() <= 64).
  void reset(int n, std::span<const std::pair<int, int>> ends);

  // Does the subgraph on all n vertices with the masked edges satisfy `mode`?
  bool satisfies(uint64_t edge_mask, Mode mode);

 private:
  bool run(uint64_t edge_mask, Mode mode);

  int n_ = 0;
  std::vector<std::pair<int, int>> ends_;
  // adjacency scratch, rebuilt per check
  std::vector<int> adj_head_;
  std::vector<int> adj_next_;
  std::vector<int> adj_to_;
  std::vector<int> adj_eid_;
  // DFS scratch
  std::vector<int> disc_, low_, parent_edge_, stack_v_, stack_it_;
};

}  // namespace rgbp
