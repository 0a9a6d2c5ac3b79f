#include "rgbp/connectivity.hpp"

#include <algorithm>
#include <cassert>

namespace rgbp {

namespace {

// Iterative Tarjan lowpoint DFS over one component rooted at `root`.
// disc values double as the visited marker (-1 = unvisited).
struct LowpointState {
  const Graph& g;
  std::vector<int>& disc;
  std::vector<int>& low;
  std::vector<bool>& is_articulation;
  std::vector<bool>& is_bridge;
  int timer = 0;

  void run(VertexId root) {
    struct Frame {
      VertexId v;
      EdgeId parent_edge;  // -1 at root
      size_t next_nbr;
      int children;
    };
    std::vector<Frame> stack;
    disc[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = timer++;
    stack.push_back({root, -1, 0, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto nbrs = g.neighbors(f.v);
      if (f.next_nbr < nbrs.size()) {
        auto [w, id] = nbrs[f.next_nbr++];
        if (id == f.parent_edge) continue;
        if (disc[static_cast<size_t>(w)] == -1) {
          ++f.children;
          disc[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = timer++;
          stack.push_back({w, id, 0, 0});
        } else {
          low[static_cast<size_t>(f.v)] =
              std::min(low[static_cast<size_t>(f.v)], disc[static_cast<size_t>(w)]);
        }
      } else {
        Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          Frame& up = stack.back();
          low[static_cast<size_t>(up.v)] =
              std::min(low[static_cast<size_t>(up.v)], low[static_cast<size_t>(done.v)]);
          if (low[static_cast<size_t>(done.v)] > disc[static_cast<size_t>(up.v)])
            is_bridge[static_cast<size_t>(done.parent_edge)] = true;
          if (stack.size() > 1 &&
              low[static_cast<size_t>(done.v)] >= disc[static_cast<size_t>(up.v)])
            is_articulation[static_cast<size_t>(up.v)] = true;
        } else if (done.children >= 2) {
          is_articulation[static_cast<size_t>(done.v)] = true;
        }
      }
    }
  }
};

}  // namespace

ConnectivityReport report(const Graph& graph) {
  const int n = graph.vertex_count();
  const int m = graph.edge_count();
  std::vector<int> disc(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
  std::vector<bool> art(static_cast<size_t>(n), false), bridge(static_cast<size_t>(m), false);
  LowpointState state{graph, disc, low, art, bridge};
  int roots = 0;
  for (VertexId v = 0; v < n; ++v)
    if (disc[static_cast<size_t>(v)] == -1) {
      ++roots;
      state.run(v);
    }
  ConnectivityReport r;
  r.connected = n > 0 ? roots == 1 : true;
  for (VertexId v = 0; v < n; ++v)
    if (art[static_cast<size_t>(v)]) r.articulation_vertices.push_back(v);
  for (EdgeId e = 0; e < m; ++e)
    if (bridge[static_cast<size_t>(e)]) r.bridges.push_back(e);
  return r;
}

bool is_two_vertex_connected(const Graph& graph) {
  if (graph.vertex_count() < 3) return false;
  ConnectivityReport r = report(graph);
  return r.connected && r.articulation_vertices.empty();
}

bool is_two_edge_connected(const Graph& graph) {
  if (graph.edge_count() < 2) return false;
  ConnectivityReport r = report(graph);
  return r.connected && r.bridges.empty();
}

bool satisfies(const Graph& graph, Mode mode) {
  return mode == Mode::VertexTwoConnected ? is_two_vertex_connected(graph)
                                          : is_two_edge_connected(graph);
}

void SubgraphChecker::reset(int n, std::span<const std::pair<int, int>> ends) {
  if (ends.size() > 64) throw CapacityError("more than 64 local edges");
  n_ = n;
  ends_.assign(ends.begin(), ends.end());
  adj_head_.assign(static_cast<size_t>(n), -1);
  adj_next_.assign(2 * ends_.size(), -1);
  adj_to_.assign(2 * ends_.size(), -1);
  adj_eid_.assign(2 * ends_.size(), -1);
  disc_.assign(static_cast<size_t>(n), -1);
  low_.assign(static_cast<size_t>(n), 0);
  parent_edge_.assign(static_cast<size_t>(n), -1);
  stack_v_.assign(static_cast<size_t>(n), 0);
  stack_it_.assign(static_cast<size_t>(n), 0);
}

bool SubgraphChecker::satisfies(uint64_t edge_mask, Mode mode) {
  if (mode == Mode::VertexTwoConnected) {
    if (n_ < 3) return false;
  } else {
    int count = 0;
    uint64_t m = edge_mask;
    while (m) {
      m &= m - 1;
      ++count;
    }
    if (count < 2) return false;
  }
  return run(edge_mask, mode);
}

// Same lowpoint analysis as report(), on flat scratch arrays. Returns true iff
// connected with no articulation vertex (vertex mode) / no bridge (edge mode).
bool SubgraphChecker::run(uint64_t edge_mask, Mode mode) {
  std::fill(adj_head_.begin(), adj_head_.end(), -1);
  int slot = 0;
  for (size_t i = 0; i < ends_.size(); ++i) {
    if (!((edge_mask >> i) & 1)) continue;
    auto [a, b] = ends_[i];
    adj_to_[static_cast<size_t>(slot)] = b;
    adj_eid_[static_cast<size_t>(slot)] = static_cast<int>(i);
    adj_next_[static_cast<size_t>(slot)] = adj_head_[static_cast<size_t>(a)];
    adj_head_[static_cast<size_t>(a)] = slot++;
    adj_to_[static_cast<size_t>(slot)] = a;
    adj_eid_[static_cast<size_t>(slot)] = static_cast<int>(i);
    adj_next_[static_cast<size_t>(slot)] = adj_head_[static_cast<size_t>(b)];
    adj_head_[static_cast<size_t>(b)] = slot++;
  }

  std::fill(disc_.begin(), disc_.end(), -1);
  int timer = 0;
  int root_children = 0;
  int top = 0;
  disc_[0] = low_[0] = timer++;
  parent_edge_[0] = -1;
  stack_v_[0] = 0;
  stack_it_[0] = adj_head_[0];
  while (top >= 0) {
    int v = stack_v_[static_cast<size_t>(top)];
    int it = stack_it_[static_cast<size_t>(top)];
    if (it != -1) {
      stack_it_[static_cast<size_t>(top)] = adj_next_[static_cast<size_t>(it)];
      int w = adj_to_[static_cast<size_t>(it)];
      int id = adj_eid_[static_cast<size_t>(it)];
      if (id == parent_edge_[static_cast<size_t>(v)]) continue;
      if (disc_[static_cast<size_t>(w)] == -1) {
        if (v == 0) ++root_children;
        disc_[static_cast<size_t>(w)] = low_[static_cast<size_t>(w)] = timer++;
        parent_edge_[static_cast<size_t>(w)] = id;
        ++top;
        stack_v_[static_cast<size_t>(top)] = w;
        stack_it_[static_cast<size_t>(top)] = adj_head_[static_cast<size_t>(w)];
      } else {
        low_[static_cast<size_t>(v)] =
            std::min(low_[static_cast<size_t>(v)], disc_[static_cast<size_t>(w)]);
      }
    } else {
      --top;
      if (top >= 0) {
        int u = stack_v_[static_cast<size_t>(top)];
        low_[static_cast<size_t>(u)] = std::min(low_[static_cast<size_t>(u)],
                                                low_[static_cast<size_t>(v)]);
        if (mode == Mode::EdgeTwoConnected &&
            low_[static_cast<size_t>(v)] > disc_[static_cast<size_t>(u)])
          return false;  // bridge
        if (mode == Mode::VertexTwoConnected && top > 0 &&
            low_[static_cast<size_t>(v)] >= disc_[static_cast<size_t>(u)])
          return false;  // articulation vertex
      }
    }
  }
  if (timer != n_) return false;  // disconnected (isolated habitat vertices count)
  if (mode == Mode::VertexTwoConnected && root_children >= 2) return false;
  return true;
}

}  // namespace rgbp
