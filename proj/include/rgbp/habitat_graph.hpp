#pragma once

#include <span>
#include <string>
#include <vector>

#include "rgbp/core.hpp"

namespace rgbp {

// Meta-edge between two habitats that share at least one unforced edge of both
// induced graphs; the witness lists exactly those shared unforced edge ids.
struct MetaEdge {
  int h1 = 0;  // h1 < h2
  int h2 = 0;
  std::vector<EdgeId> witness;
};

struct BasicHabitatGraph {
  int habitat_count = 0;
  std::vector<MetaEdge> meta_edges;            // sorted by (h1, h2)
  std::vector<std::vector<int>> neighbors;     // per habitat, sorted

  bool adjacent(int a, int b) const;
  // Debug dump: one "habitat_i habitat_j witness_count" line per meta-edge.
  std::string dump() const;
};

BasicHabitatGraph build(const Instance& instance);

enum class ComponentShape { Singleton, Path, Cycle, Other };

std::string to_string(ComponentShape shape);

struct Component {
  std::vector<int> habitat_indices;   // parent habitat indices, sorted
  std::vector<int> ordered_habitats;  // parent indices in DP order (Path/Cycle)
  ComponentShape shape = ComponentShape::Singleton;
  Instance sub_instance;
  std::vector<VertexId> vertex_map;   // sub vertex -> parent vertex
  std::vector<EdgeId> edge_map;       // sub edge id -> parent edge id
};

struct ComponentDecomposition {
  std::vector<Component> components;
};

// Components of the basic habitat graph, each with its sub-instance
// G_p = (union of member habitats, union of member induced edge sets).
// Edges inside no member habitat's induced graph never enter a sub-instance.
ComponentDecomposition decompose(const Instance& instance, const BasicHabitatGraph& hg);

// Habitats outside `subset` that overlap its vertex union, extend beyond it,
// and are meta-adjacent to a member.
std::vector<int> boundary(const Instance& instance, const BasicHabitatGraph& hg,
                          std::span<const int> subset);

}  // namespace rgbp
