#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rgbp/core.hpp"
#include "rgbp/habitat_graph.hpp"

namespace rgbp {

// All edge subsets of E(G[H]) that contain the local forced edges and satisfy
// the mode predicate, as bit masks over `local_edges` (ascending edge id).
struct FeasibleFamily {
  int habitat_index = -1;
  std::vector<EdgeId> local_edges;
  std::vector<std::pair<int, int>> local_ends;
  uint64_t forced_mask = 0;
  std::vector<uint64_t> sets;  // ascending mask value

  std::vector<EdgeId> edges_of(uint64_t mask) const;
};

FeasibleFamily enumerate_feasible(const Instance& instance, int habitat_index);

// D[i, F_i]: minimum table value reaching set F_i of habitat i, with the
// predecessor set index for backtracking (-1 in the first row).
//   D[1, F_1] = c(F_1)
//   D[i, F_i] = min over F_{i-1} of D[i-1, F_{i-1}] + c(F_i \ F_{i-1})
// Ties go to the lowest predecessor mask. Forced edges shared by habitats far
// apart shift all values of a row by the same constant, so reported solution
// costs are always recomputed on the backtracked edge set.
struct DpEntry {
  Cost value = 0;
  int back = -1;
};

struct DpTable {
  std::vector<FeasibleFamily> families;      // per position in the order
  std::vector<std::vector<DpEntry>> rows;    // rows[i] parallel to families[i].sets
};

// The filled table for a path-ordered habitat sequence; families may be empty
// (the caller reports no). Exposed for inspection and tests.
DpTable dp_path_table(const Instance& instance, std::span<const int> ordered_habitats);

struct SolverOptions {
  // Free-edge count up to which an Other-shaped component is solved by
  // exhaustive subset search instead of branch and bound.
  int exhaustive_threshold = 18;
};

// Minimum-cost solution when the habitats (in the given order) form a path /
// a cycle in the basic habitat graph. Throws InputError when they do not.
Solution dp_path(const Instance& instance, std::span<const int> ordered_habitats);
Solution dp_cycle(const Instance& instance, std::span<const int> ordered_habitats);

// Exact search over a single component: propagation-driven branch and bound
// with independent-subproblem splitting.
Solution branch_and_bound(const Instance& component);

// Dispatch by shape: Singleton -> cheapest family member, Path/Cycle -> DP,
// Other -> exhaustive below the threshold, branch and bound above.
Solution solve_component(const Instance& component, ComponentShape shape,
                         const SolverOptions& options = {});

// reduce -> build -> decompose -> solve components -> recombine; the returned
// selection and cost are in terms of the input instance.
Solution solve(const Instance& instance, const SolverOptions& options = {});

struct VerifyResult {
  bool ok = false;
  std::string diagnostic;  // names the first violated condition
};

// forced subset check, budget check, then per-habitat mode predicate.
VerifyResult verify(const Instance& instance, std::span<const EdgeId> selected);

// Structural facts about reduced instances in the tractable (eta, delta)
// ranges, surfaced as diagnostics. The solver stays exact either way; these
// checks certify why the listed regimes decompose into small components.
struct RegimeDiagnostics {
  bool applicable_h4d4 = false;  // eta<=4, delta<=4: components have <= 5 habitats
  bool ok_h4d4 = true;
  bool applicable_h4d5 = false;  // eta<=4, delta==5: non-triangle components are paths/cycles
  bool ok_h4d5 = true;
  bool applicable_h6d3 = false;  // eta<=6, delta<=3: size-6 habitat => component union has 6 vertices
  bool ok_h6d3 = true;
  std::vector<std::string> violations;

  bool all_ok() const { return ok_h4d4 && ok_h4d5 && ok_h6d3; }
};

RegimeDiagnostics regime_diagnostics(const Instance& reduced, const BasicHabitatGraph& hg,
                                     const ComponentDecomposition& decomposition);

}  // namespace rgbp
