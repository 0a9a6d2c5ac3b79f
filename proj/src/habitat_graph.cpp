#include "rgbp/habitat_graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rgbp {

bool BasicHabitatGraph::adjacent(int a, int b) const {
  if (a == b) return false;
  const auto& nbrs = neighbors[static_cast<size_t>(a)];
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::string BasicHabitatGraph::dump() const {
  std::ostringstream out;
  for (const MetaEdge& me : meta_edges)
    out << me.h1 << ' ' << me.h2 << ' ' << me.witness.size() << '\n';
  return out.str();
}

BasicHabitatGraph build(const Instance& instance) {
  const int h = static_cast<int>(instance.habitats.size());
  BasicHabitatGraph hg;
  hg.habitat_count = h;
  hg.neighbors.assign(static_cast<size_t>(h), {});

  // membership[e] = habitats whose induced graph contains unforced edge e
  const int m = instance.graph.edge_count();
  std::vector<std::vector<int>> membership(static_cast<size_t>(m));
  for (int i = 0; i < h; ++i) {
    const Habitat& hab = instance.habitats[static_cast<size_t>(i)];
    for (EdgeId e = 0; e < m; ++e) {
      if (instance.forced[static_cast<size_t>(e)]) continue;
      const Edge& ed = instance.graph.edge(e);
      if (hab.contains(ed.u) && hab.contains(ed.v)) membership[static_cast<size_t>(e)].push_back(i);
    }
  }
  std::vector<std::vector<EdgeId>> witness(static_cast<size_t>(h) * static_cast<size_t>(h));
  for (EdgeId e = 0; e < m; ++e) {
    const auto& habs = membership[static_cast<size_t>(e)];
    for (size_t a = 0; a < habs.size(); ++a)
      for (size_t b = a + 1; b < habs.size(); ++b)
        witness[static_cast<size_t>(habs[a]) * static_cast<size_t>(h) +
                static_cast<size_t>(habs[b])]
            .push_back(e);
  }
  for (int a = 0; a < h; ++a)
    for (int b = a + 1; b < h; ++b) {
      auto& w = witness[static_cast<size_t>(a) * static_cast<size_t>(h) + static_cast<size_t>(b)];
      if (w.empty()) continue;
      hg.meta_edges.push_back({a, b, std::move(w)});
      hg.neighbors[static_cast<size_t>(a)].push_back(b);
      hg.neighbors[static_cast<size_t>(b)].push_back(a);
    }
  for (auto& nbrs : hg.neighbors) std::sort(nbrs.begin(), nbrs.end());
  return hg;
}

std::string to_string(ComponentShape shape) {
  switch (shape) {
    case ComponentShape::Singleton: return "singleton";
    case ComponentShape::Path: return "path";
    case ComponentShape::Cycle: return "cycle";
    case ComponentShape::Other: return "other";
  }
  return "?";
}

namespace {

ComponentShape classify(const BasicHabitatGraph& hg, const std::vector<int>& members) {
  if (members.size() == 1) return ComponentShape::Singleton;
  int deg1 = 0;
  for (int i : members) {
    int d = static_cast<int>(hg.neighbors[static_cast<size_t>(i)].size());
    if (d > 2) return ComponentShape::Other;
    if (d == 1) ++deg1;
  }
  // connected with all degrees <= 2: a path has two degree-1 endpoints
  return deg1 == 2 ? ComponentShape::Path : ComponentShape::Cycle;
}

// Path order starting at the lower-indexed endpoint; cycle order starting at
// the lowest member toward its lower-indexed neighbor.
std::vector<int> order_members(const BasicHabitatGraph& hg, const std::vector<int>& members,
                               ComponentShape shape) {
  if (shape == ComponentShape::Singleton || shape == ComponentShape::Other) return members;
  int start = -1;
  if (shape == ComponentShape::Path) {
    for (int i : members)
      if (hg.neighbors[static_cast<size_t>(i)].size() == 1 && (start == -1 || i < start)) start = i;
  } else {
    start = *std::min_element(members.begin(), members.end());
  }
  std::vector<int> order;
  order.push_back(start);
  int prev = -1, cur = start;
  while (static_cast<int>(order.size()) < static_cast<int>(members.size())) {
    int next = -1;
    for (int nb : hg.neighbors[static_cast<size_t>(cur)])
      if (nb != prev && (next == -1 || nb < next)) next = nb;
    order.push_back(next);
    prev = cur;
    cur = next;
  }
  return order;
}

}  // namespace

ComponentDecomposition decompose(const Instance& instance, const BasicHabitatGraph& hg) {
  const int h = hg.habitat_count;
  std::vector<int> comp(static_cast<size_t>(h), -1);
  int num_components = 0;
  for (int i = 0; i < h; ++i) {
    if (comp[static_cast<size_t>(i)] != -1) continue;
    std::vector<int> stack{i};
    comp[static_cast<size_t>(i)] = num_components;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int nb : hg.neighbors[static_cast<size_t>(v)])
        if (comp[static_cast<size_t>(nb)] == -1) {
          comp[static_cast<size_t>(nb)] = num_components;
          stack.push_back(nb);
        }
    }
    ++num_components;
  }

  ComponentDecomposition out;
  out.components.resize(static_cast<size_t>(num_components));
  for (int i = 0; i < h; ++i)
    out.components[static_cast<size_t>(comp[static_cast<size_t>(i)])].habitat_indices.push_back(i);

  for (Component& c : out.components) {
    std::sort(c.habitat_indices.begin(), c.habitat_indices.end());
    c.shape = classify(hg, c.habitat_indices);
    c.ordered_habitats = order_members(hg, c.habitat_indices, c.shape);

    // vertex union and member-induced edge union
    std::vector<VertexId> verts;
    for (int i : c.habitat_indices) {
      const auto& vs = instance.habitats[static_cast<size_t>(i)].vertices;
      verts.insert(verts.end(), vs.begin(), vs.end());
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    c.vertex_map = verts;

    std::vector<bool> edge_in(static_cast<size_t>(instance.graph.edge_count()), false);
    for (int i : c.habitat_indices) {
      const Habitat& hab = instance.habitats[static_cast<size_t>(i)];
      for (EdgeId e = 0; e < instance.graph.edge_count(); ++e) {
        const Edge& ed = instance.graph.edge(e);
        if (hab.contains(ed.u) && hab.contains(ed.v)) edge_in[static_cast<size_t>(e)] = true;
      }
    }
    auto local_vertex = [&](VertexId v) {
      return static_cast<VertexId>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
    };
    std::vector<Edge> sub_edges;
    for (EdgeId e = 0; e < instance.graph.edge_count(); ++e)
      if (edge_in[static_cast<size_t>(e)]) {
        const Edge& ed = instance.graph.edge(e);
        sub_edges.push_back({local_vertex(ed.u), local_vertex(ed.v)});
        c.edge_map.push_back(e);
      }
    Instance sub;
    sub.graph = Graph(static_cast<int>(verts.size()), sub_edges);
    for (EdgeId e : c.edge_map) {
      sub.cost.push_back(instance.cost[static_cast<size_t>(e)]);
      sub.forced.push_back(instance.forced[static_cast<size_t>(e)]);
    }
    for (int i : c.habitat_indices) {
      std::vector<VertexId> hv;
      for (VertexId v : instance.habitats[static_cast<size_t>(i)].vertices)
        hv.push_back(local_vertex(v));
      sub.habitats.push_back(Habitat(std::move(hv)));
    }
    sub.budget = instance.budget;
    sub.mode = instance.mode;
    c.sub_instance = std::move(sub);
  }
  return out;
}

std::vector<int> boundary(const Instance& instance, const BasicHabitatGraph& hg,
                          std::span<const int> subset) {
  std::vector<bool> in_subset(instance.habitats.size(), false);
  for (int i : subset) {
    if (i < 0 || i >= static_cast<int>(instance.habitats.size()))
      throw InputError("habitat index out of range in boundary subset");
    in_subset[static_cast<size_t>(i)] = true;
  }
  std::vector<VertexId> hull;
  for (int i : subset) {
    const auto& vs = instance.habitats[static_cast<size_t>(i)].vertices;
    hull.insert(hull.end(), vs.begin(), vs.end());
  }
  std::sort(hull.begin(), hull.end());
  hull.erase(std::unique(hull.begin(), hull.end()), hull.end());
  auto in_hull = [&](VertexId v) { return std::binary_search(hull.begin(), hull.end(), v); };

  std::vector<int> result;
  for (size_t i = 0; i < instance.habitats.size(); ++i) {
    if (in_subset[i]) continue;
    const Habitat& h = instance.habitats[i];
    bool overlaps = false, extends = false;
    for (VertexId v : h.vertices) (in_hull(v) ? overlaps : extends) = true;
    if (!overlaps || !extends) continue;
    bool meta = false;
    for (int nb : hg.neighbors[i])
      if (in_subset[static_cast<size_t>(nb)]) {
        meta = true;
        break;
      }
    if (meta) result.push_back(static_cast<int>(i));
  }
  return result;
}

}  // namespace rgbp
