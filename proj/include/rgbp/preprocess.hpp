#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rgbp/core.hpp"

namespace rgbp {

enum class Rule { RR1, RR2, RR3, RR4, RR5 };

std::string to_string(Rule rule);

// One rule application. Habitat/edge ids are pre-step ids; deletions listed in
// descending id order and applied simultaneously, so a trace replays exactly.
struct ReductionStep {
  Rule rule = Rule::RR1;
  std::vector<int> habitats;   // RR1 witness, RR2/RR4 deletions
  std::vector<EdgeId> edges;   // RR3 newly forced, RR5 deletions
  Cost budget_delta = 0;       // nonzero only for RR5 steps deleting forced edges
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;

  Cost total_budget_delta() const;
  // One step per line: "RR<i> <payload> <budget_delta>".
  std::string to_text() const;
};

struct ReduceResult {
  bool infeasible = false;
  int witness_habitat = -1;      // RR1 witness (original indexing at time of step)
  std::string infeasible_reason;
  Instance instance;             // meaningful only when !infeasible
  ReductionTrace trace;
  std::vector<EdgeId> edge_origin;  // reduced edge id -> input edge id
  // forced edges RR5 removed, as input edge ids; still part of every solution
  std::vector<EdgeId> deleted_forced;
};

// Individual rules, each a single application pass (for tests and the driver).
// They mutate nothing; results carry the changed instance.

// Witness habitat index whose G[H] fails the mode predicate, if any.
std::optional<int> rr1_trivial_no(const Instance& instance);

// Drops duplicate habitats, first occurrence kept.
Instance rr2_dedupe(const Instance& instance, ReductionTrace* trace = nullptr);

// Forces every edge e of some G[H] with G[H]-e failing the mode predicate.
Instance rr3_force_edges(const Instance& instance, ReductionTrace* trace = nullptr);

// Drops habitats already satisfied by the forced set alone.
Instance rr4_drop_solved(const Instance& instance, ReductionTrace* trace = nullptr);

// Deletes edges inside no habitat's induced graph; forced deletions decrement
// the budget. Returns nullopt when the budget would go negative.
std::optional<Instance> rr5_drop_unused_edges(const Instance& instance,
                                              ReductionTrace* trace = nullptr,
                                              std::vector<EdgeId>* edge_origin = nullptr);

// RR1..RR5 to fixpoint. edge_origin composes across all RR5 applications.
ReduceResult reduce(const Instance& instance);

// Applies a recorded trace to `instance`; reproduces reduce()'s instance bit-exactly.
Instance replay(const Instance& instance, const ReductionTrace& trace);

}  // namespace rgbp
