#include "rgbp/solver.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "rgbp/connectivity.hpp"
#include "rgbp/parallel.hpp"
#include "rgbp/preprocess.hpp"

namespace rgbp {

namespace {

constexpr Cost kInfCost = std::numeric_limits<Cost>::max() / 4;

struct LocalEdges {
  std::vector<EdgeId> ids;
  std::vector<std::pair<int, int>> ends;
};

LocalEdges collect_local_edges(const Instance& inst, const Habitat& h) {
  LocalEdges out;
  for (EdgeId e = 0; e < inst.graph.edge_count(); ++e) {
    const Edge& ed = inst.graph.edge(e);
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

std::vector<EdgeId> sorted_union(std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace

std::vector<EdgeId> FeasibleFamily::edges_of(uint64_t mask) const {
  std::vector<EdgeId> out;
  for (size_t i = 0; i < local_edges.size(); ++i)
    if ((mask >> i) & 1) out.push_back(local_edges[i]);
  return out;
}

FeasibleFamily enumerate_feasible(const Instance& instance, int habitat_index) {
  const Habitat& h = instance.habitats[static_cast<size_t>(habitat_index)];
  FeasibleFamily fam;
  fam.habitat_index = habitat_index;
  LocalEdges le = collect_local_edges(instance, h);
  if (le.ids.size() > 64) throw CapacityError("habitat exceeds 64 induced edges");
  fam.local_edges = le.ids;
  fam.local_ends = le.ends;

  std::vector<int> free_bits;
  for (size_t i = 0; i < le.ids.size(); ++i) {
    if (instance.forced[static_cast<size_t>(le.ids[i])])
      fam.forced_mask |= 1ull << i;
    else
      free_bits.push_back(static_cast<int>(i));
  }
  if (free_bits.size() > 28)
    throw CapacityError("feasible family enumeration over " +
                        std::to_string(free_bits.size()) + " free edges");

  SubgraphChecker checker;
  checker.reset(h.size(), fam.local_ends);
  // counter bits spread onto free positions in ascending order, so full masks
  // come out in ascending value
  for (uint64_t counter = 0; counter < (1ull << free_bits.size()); ++counter) {
    uint64_t mask = fam.forced_mask;
    for (size_t b = 0; b < free_bits.size(); ++b)
      if ((counter >> b) & 1) mask |= 1ull << free_bits[b];
    if (checker.satisfies(mask, instance.mode)) fam.sets.push_back(mask);
  }
  return fam;
}

namespace {

// ----- path DP core (shared by dp_path and dp_cycle) -----

struct PathDpOutcome {
  bool feasible = false;
  std::vector<EdgeId> selected;  // union of chosen sets plus all forced edges
  Cost cost = 0;
};

Cost mask_cost(const Instance& inst, const FeasibleFamily& fam, uint64_t mask) {
  Cost c = 0;
  for (size_t i = 0; i < fam.local_edges.size(); ++i)
    if ((mask >> i) & 1) c += inst.cost[static_cast<size_t>(fam.local_edges[i])];
  return c;
}

DpTable build_dp_table(const Instance& inst, std::span<const int> order) {
  DpTable table;
  const size_t h = order.size();
  table.families.reserve(h);
  for (int idx : order) {
    table.families.push_back(enumerate_feasible(inst, idx));
    if (table.families.back().sets.empty()) return table;  // caller reports no
  }
  table.rows.resize(h);
  table.rows[0].reserve(table.families[0].sets.size());
  for (uint64_t s : table.families[0].sets)
    table.rows[0].push_back({mask_cost(inst, table.families[0], s), -1});

  for (size_t i = 1; i < h; ++i) {
    const FeasibleFamily& prev = table.families[i - 1];
    const FeasibleFamily& cur = table.families[i];
    // shared edge positions (cur bit, prev bit)
    std::vector<std::pair<int, int>> shared;
    for (size_t cb = 0; cb < cur.local_edges.size(); ++cb) {
      auto it = std::lower_bound(prev.local_edges.begin(), prev.local_edges.end(),
                                 cur.local_edges[cb]);
      if (it != prev.local_edges.end() && *it == cur.local_edges[cb])
        shared.push_back({static_cast<int>(cb), static_cast<int>(it - prev.local_edges.begin())});
    }
    table.rows[i].assign(cur.sets.size(), {kInfCost, -1});
    for (size_t ci = 0; ci < cur.sets.size(); ++ci) {
      const uint64_t cmask = cur.sets[ci];
      const Cost full = mask_cost(inst, cur, cmask);
      for (size_t pi = 0; pi < prev.sets.size(); ++pi) {
        Cost overlap = 0;
        for (auto [cb, pb] : shared)
          if (((cmask >> cb) & 1) && ((prev.sets[pi] >> pb) & 1))
            overlap += inst.cost[static_cast<size_t>(cur.local_edges[static_cast<size_t>(cb)])];
        Cost cand = table.rows[i - 1][pi].value + full - overlap;
        if (cand < table.rows[i][ci].value)
          table.rows[i][ci] = {cand, static_cast<int>(pi)};
      }
    }
  }
  return table;
}

PathDpOutcome run_path_dp(const Instance& inst, std::span<const int> order) {
  PathDpOutcome out;
  const size_t h = order.size();
  DpTable table = build_dp_table(inst, order);
  if (table.rows.empty()) return out;  // some family was empty: report no

  size_t best = 0;
  const auto& last = table.rows[h - 1];
  for (size_t j = 1; j < last.size(); ++j)
    if (last[j].value < last[best].value) best = j;

  std::vector<EdgeId> chosen = inst.forced_ids();
  int cur_idx = static_cast<int>(best);
  for (size_t i = h; i-- > 0;) {
    const FeasibleFamily& fam = table.families[i];
    auto set_edges = fam.edges_of(fam.sets[static_cast<size_t>(cur_idx)]);
    chosen.insert(chosen.end(), set_edges.begin(), set_edges.end());
    cur_idx = table.rows[i][static_cast<size_t>(cur_idx)].back;
  }
  out.feasible = true;
  out.selected = sorted_union(std::move(chosen));
  out.cost = inst.edge_set_cost(out.selected);
  return out;
}

void check_order_is(const Instance& inst, std::span<const int> order, bool cycle) {
  const size_t h = inst.habitats.size();
  if (order.size() != h) throw InputError("habitat order must list every habitat exactly once");
  std::vector<bool> seen(h, false);
  for (int i : order) {
    if (i < 0 || i >= static_cast<int>(h) || seen[static_cast<size_t>(i)])
      throw InputError("habitat order must list every habitat exactly once");
    seen[static_cast<size_t>(i)] = true;
  }
  BasicHabitatGraph hg = build(inst);
  size_t expected = cycle ? h : h - 1;
  if (hg.meta_edges.size() != expected)
    throw InputError(cycle ? "habitats do not form a cycle" : "habitats do not form a path");
  for (size_t i = 0; i + 1 < h; ++i)
    if (!hg.adjacent(order[i], order[i + 1]))
      throw InputError("consecutive habitats are not meta-adjacent");
  if (cycle && h > 0 && !hg.adjacent(order[h - 1], order[0]))
    throw InputError("habitats do not close a cycle");
}

Solution outcome_to_solution(const Instance& inst, const PathDpOutcome& out, const char* origin) {
  Solution sol;
  if (!out.feasible) {
    sol.status = SolveStatus::Infeasible;
    sol.trace.push_back({std::string(origin) + ": some feasible family is empty", {}});
    return sol;
  }
  sol.status = SolveStatus::Optimal;
  sol.selected = out.selected;
  sol.cost = out.cost;
  sol.yes = sol.cost <= inst.budget;
  sol.trace.push_back({origin, sol.selected});
  return sol;
}

}  // namespace

Solution dp_path(const Instance& instance, std::span<const int> ordered_habitats) {
  if (ordered_habitats.empty()) throw InputError("dp_path needs at least one habitat");
  if (ordered_habitats.size() > 1) check_order_is(instance, ordered_habitats, false);
  return outcome_to_solution(instance, run_path_dp(instance, ordered_habitats), "dp_path");
}

DpTable dp_path_table(const Instance& instance, std::span<const int> ordered_habitats) {
  if (ordered_habitats.empty()) throw InputError("dp_path needs at least one habitat");
  if (ordered_habitats.size() > 1) check_order_is(instance, ordered_habitats, false);
  return build_dp_table(instance, ordered_habitats);
}

Solution dp_cycle(const Instance& instance, std::span<const int> ordered_habitats) {
  if (ordered_habitats.size() < 3) throw InputError("dp_cycle needs at least three habitats");
  check_order_is(instance, ordered_habitats, true);

  FeasibleFamily fam0 = enumerate_feasible(instance, ordered_habitats[0]);
  std::span<const int> rest = ordered_habitats.subspan(1);
  PathDpOutcome best;
  for (uint64_t f0 : fam0.sets) {
    Instance branch = instance;
    for (EdgeId e : fam0.edges_of(f0)) branch.forced[static_cast<size_t>(e)] = true;
    // fixing F_0 only adds forced edges, so the remaining habitats still obey
    // the path DP's sharing structure; no precondition recheck
    PathDpOutcome out = run_path_dp(branch, rest);
    if (!out.feasible) continue;
    out.selected = sorted_union(std::move(out.selected));  // includes F_0 via branch forced
    out.cost = instance.edge_set_cost(out.selected);
    if (!best.feasible || out.cost < best.cost) best = std::move(out);
  }
  return outcome_to_solution(instance, best, "dp_cycle");
}

namespace {

// ----- branch and bound -----

struct BnbHabitat {
  std::vector<EdgeId> edges;  // ids of E(G[H]), ascending
  std::vector<std::pair<int, int>> ends;
  int vertex_count = 0;
};

enum : uint8_t { kUndecided = 0, kIncluded = 1, kExcluded = 2 };

class Bnb {
 public:
  explicit Bnb(const Instance& inst) : inst_(inst) {
    const int m = inst.graph.edge_count();
    state_.assign(static_cast<size_t>(m), kUndecided);
    for (EdgeId e = 0; e < m; ++e)
      if (inst.forced[static_cast<size_t>(e)]) state_[static_cast<size_t>(e)] = kIncluded;
    habs_.reserve(inst.habitats.size());
    for (const Habitat& h : inst.habitats) {
      LocalEdges le = collect_local_edges(inst, h);
      if (le.ids.size() > 64) throw CapacityError("habitat exceeds 64 induced edges");
      habs_.push_back({le.ids, le.ends, h.size()});
    }
    checker_.resize(habs_.size());
    for (size_t i = 0; i < habs_.size(); ++i) checker_[i].reset(habs_[i].vertex_count, habs_[i].ends);
    unit_costs_ = std::all_of(inst.cost.begin(), inst.cost.end(), [](Cost c) { return c == 1; });
  }

  // Optimal extra edge set (beyond the forced edges) satisfying all habitats,
  // or no value when infeasible.
  std::optional<std::vector<EdgeId>> run() {
    std::vector<int> all(habs_.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<EdgeId> edges;
    Cost cost = solve_cluster(all, kInfCost, edges);
    if (cost >= kInfCost) return std::nullopt;
    return sorted_union(std::move(edges));
  }

 private:
  uint64_t mask_with(int hi, uint8_t a, uint8_t b = 255) const {
    const BnbHabitat& h = habs_[static_cast<size_t>(hi)];
    uint64_t mask = 0;
    for (size_t i = 0; i < h.edges.size(); ++i) {
      uint8_t s = state_[static_cast<size_t>(h.edges[i])];
      if (s == a || s == b) mask |= 1ull << i;
    }
    return mask;
  }

  bool habitat_satisfied(int hi) {
    return checker_[static_cast<size_t>(hi)].satisfies(mask_with(hi, kIncluded), inst_.mode);
  }

  struct HabitatMasks {
    uint64_t included = 0;
    uint64_t undecided = 0;
    std::vector<int> und_bits;
  };

  HabitatMasks masks_of(int hi) const {
    const BnbHabitat& h = habs_[static_cast<size_t>(hi)];
    HabitatMasks m;
    for (size_t i = 0; i < h.edges.size(); ++i) {
      uint8_t s = state_[static_cast<size_t>(h.edges[i])];
      if (s == kIncluded) m.included |= 1ull << i;
      if (s == kUndecided) {
        m.undecided |= 1ull << i;
        m.und_bits.push_back(static_cast<int>(i));
      }
    }
    return m;
  }

  // Cheapest submask of the habitat's undecided edges whose inclusion
  // satisfies it. Exact when the undecided set is narrow enough to enumerate,
  // otherwise the full undecided set (a valid completion, not a bound).
  Cost cheapest_completion(int hi, uint64_t* best_mask) {
    const BnbHabitat& h = habs_[static_cast<size_t>(hi)];
    HabitatMasks m = masks_of(hi);
    if (m.und_bits.size() > 16) {
      if (checker_[static_cast<size_t>(hi)].satisfies(m.included | m.undecided, inst_.mode)) {
        if (best_mask) *best_mask = m.undecided;
        Cost c = 0;
        for (int b : m.und_bits)
          c += inst_.cost[static_cast<size_t>(h.edges[static_cast<size_t>(b)])];
        return c;
      }
      return kInfCost;
    }
    Cost best = kInfCost;
    uint64_t best_m = 0;
    for (uint64_t counter = 0; counter < (1ull << m.und_bits.size()); ++counter) {
      uint64_t extra = 0;
      Cost c = 0;
      for (size_t b = 0; b < m.und_bits.size(); ++b)
        if ((counter >> b) & 1) {
          extra |= 1ull << m.und_bits[b];
          c += inst_.cost[static_cast<size_t>(h.edges[static_cast<size_t>(m.und_bits[b])])];
        }
      if (c >= best) continue;
      if (checker_[static_cast<size_t>(hi)].satisfies(m.included | extra, inst_.mode)) {
        best = c;
        best_m = extra;
      }
    }
    if (best_mask) *best_mask = best_m;
    return best;
  }

  // Admissible per-habitat bound: exact cheapest completion when enumerable,
  // else the cheapest single undecided edge (the habitat needs at least one).
  Cost lower_bound_extra(int hi) {
    const BnbHabitat& h = habs_[static_cast<size_t>(hi)];
    HabitatMasks m = masks_of(hi);
    if (m.und_bits.size() > 16) {
      Cost best = kInfCost;
      for (int b : m.und_bits)
        best = std::min(best, inst_.cost[static_cast<size_t>(h.edges[static_cast<size_t>(b)])]);
      return best;
    }
    return cheapest_completion(hi, nullptr);
  }

  // Returns the optimal extra cost (< cutoff) for the cluster, appending the
  // chosen edges to out_edges; kInfCost when no completion beats the cutoff.
  Cost solve_cluster(const std::vector<int>& cluster, Cost cutoff, std::vector<EdgeId>& out_edges) {
    // propagation: exclusions alone decide both rules
    std::vector<EdgeId> propagated;
    Cost prop_cost = 0;
    for (int hi : cluster) {
      const BnbHabitat& h = habs_[static_cast<size_t>(hi)];
      uint64_t avail = mask_with(hi, kIncluded, kUndecided);
      if (!checker_[static_cast<size_t>(hi)].satisfies(avail, inst_.mode)) {
        undo(propagated);
        return kInfCost;
      }
      for (size_t i = 0; i < h.edges.size(); ++i) {
        EdgeId e = h.edges[i];
        if (state_[static_cast<size_t>(e)] != kUndecided) continue;
        if (!checker_[static_cast<size_t>(hi)].satisfies(avail & ~(1ull << i), inst_.mode)) {
          state_[static_cast<size_t>(e)] = kIncluded;
          propagated.push_back(e);
          prop_cost += inst_.cost[static_cast<size_t>(e)];
        }
      }
    }
    if (prop_cost >= cutoff) {
      undo(propagated);
      return kInfCost;
    }

    std::vector<int> unsat;
    for (int hi : cluster)
      if (!habitat_satisfied(hi)) unsat.push_back(hi);
    if (unsat.empty()) {
      out_edges.insert(out_edges.end(), propagated.begin(), propagated.end());
      undo(propagated);
      return prop_cost;
    }

    // independent sub-clusters: habitats coupled through shared undecided edges
    std::vector<std::vector<int>> clusters = split_clusters(unsat);
    if (clusters.size() > 1) {
      Cost total = prop_cost;
      std::vector<EdgeId> acc(propagated);
      for (const auto& sub : clusters) {
        std::vector<EdgeId> sub_edges;
        Cost c = solve_cluster(sub, cutoff - total, sub_edges);
        if (c >= kInfCost) {
          undo(propagated);
          return kInfCost;
        }
        total += c;
        acc.insert(acc.end(), sub_edges.begin(), sub_edges.end());
        if (total >= cutoff) {
          undo(propagated);
          return kInfCost;
        }
      }
      out_edges.insert(out_edges.end(), acc.begin(), acc.end());
      undo(propagated);
      return total;
    }

    // admissible lower bound: disjoint unsatisfied habitats, each charged its
    // cheapest completion within its own undecided edges
    Cost lb = prop_cost + disjoint_lower_bound(unsat);
    if (lb >= cutoff) {
      undo(propagated);
      return kInfCost;
    }

    Cost best = cutoff;
    std::vector<EdgeId> best_edges;
    bool have_best = false;

    // greedy completion incumbent
    {
      std::vector<EdgeId> greedy;
      Cost gc = greedy_completion(unsat, greedy);
      if (gc < kInfCost && prop_cost + gc < best) {
        best = prop_cost + gc;
        best_edges = propagated;
        best_edges.insert(best_edges.end(), greedy.begin(), greedy.end());
        have_best = true;
      }
    }

    EdgeId branch_edge = pick_branch_edge(unsat);
    assert(branch_edge >= 0);
    const uint8_t first = unit_costs_ ? kIncluded : kExcluded;
    const uint8_t second = unit_costs_ ? kExcluded : kIncluded;
    for (uint8_t decision : {first, second}) {
      state_[static_cast<size_t>(branch_edge)] = decision;
      Cost branch_base = decision == kIncluded ? inst_.cost[static_cast<size_t>(branch_edge)] : 0;
      if (prop_cost + branch_base < best) {
        std::vector<EdgeId> sub_edges;
        Cost c = solve_cluster(unsat, best - prop_cost - branch_base, sub_edges);
        if (c < kInfCost && prop_cost + branch_base + c < best) {
          best = prop_cost + branch_base + c;
          best_edges = propagated;
          if (decision == kIncluded) best_edges.push_back(branch_edge);
          best_edges.insert(best_edges.end(), sub_edges.begin(), sub_edges.end());
          have_best = true;
        }
      }
      state_[static_cast<size_t>(branch_edge)] = kUndecided;
    }

    undo(propagated);
    if (!have_best) return kInfCost;
    out_edges.insert(out_edges.end(), best_edges.begin(), best_edges.end());
    return best;
  }

  void undo(const std::vector<EdgeId>& propagated) {
    for (EdgeId e : propagated) state_[static_cast<size_t>(e)] = kUndecided;
  }

  std::vector<std::vector<int>> split_clusters(const std::vector<int>& unsat) {
    std::map<EdgeId, std::vector<int>> by_edge;
    for (int hi : unsat)
      for (EdgeId e : habs_[static_cast<size_t>(hi)].edges)
        if (state_[static_cast<size_t>(e)] == kUndecided) by_edge[e].push_back(hi);
    std::map<int, int> parent;
    for (int hi : unsat) parent[hi] = hi;
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto& [e, hs] : by_edge)
      for (size_t i = 1; i < hs.size(); ++i) parent[find(hs[0])] = find(hs[i]);
    std::map<int, std::vector<int>> groups;
    for (int hi : unsat) groups[find(hi)].push_back(hi);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(members);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
  }

  Cost disjoint_lower_bound(const std::vector<int>& unsat) {
    Cost lb = 0;
    std::vector<bool> used(static_cast<size_t>(inst_.graph.edge_count()), false);
    for (int hi : unsat) {
      const BnbHabitat& h = habs_[static_cast<size_t>(hi)];
      bool disjoint = true;
      for (EdgeId e : h.edges)
        if (state_[static_cast<size_t>(e)] == kUndecided && used[static_cast<size_t>(e)]) {
          disjoint = false;
          break;
        }
      if (!disjoint) continue;
      Cost extra = lower_bound_extra(hi);
      if (extra >= kInfCost) return kInfCost;
      lb += extra;
      for (EdgeId e : h.edges)
        if (state_[static_cast<size_t>(e)] == kUndecided) used[static_cast<size_t>(e)] = true;
    }
    return lb;
  }

  // Satisfy unsatisfied habitats one by one with their cheapest local
  // completion; monotonicity makes the result globally feasible.
  Cost greedy_completion(const std::vector<int>& unsat, std::vector<EdgeId>& edges) {
    std::vector<EdgeId> added;
    Cost total = 0;
    for (int hi : unsat) {
      if (habitat_satisfied(hi)) continue;
      uint64_t mask = 0;
      Cost extra = cheapest_completion(hi, &mask);
      if (extra >= kInfCost) {
        for (EdgeId e : added) state_[static_cast<size_t>(e)] = kUndecided;
        return kInfCost;
      }
      const BnbHabitat& h = habs_[static_cast<size_t>(hi)];
      for (size_t i = 0; i < h.edges.size(); ++i)
        if ((mask >> i) & 1) {
          state_[static_cast<size_t>(h.edges[i])] = kIncluded;
          added.push_back(h.edges[i]);
          total += inst_.cost[static_cast<size_t>(h.edges[i])];
        }
    }
    for (EdgeId e : added) state_[static_cast<size_t>(e)] = kUndecided;
    edges = std::move(added);
    return total;
  }

  // Undecided edge hitting the most unsatisfied habitats, ties to lowest id.
  EdgeId pick_branch_edge(const std::vector<int>& unsat) {
    std::map<EdgeId, int> count;
    for (int hi : unsat)
      for (EdgeId e : habs_[static_cast<size_t>(hi)].edges)
        if (state_[static_cast<size_t>(e)] == kUndecided) ++count[e];
    EdgeId best = -1;
    int best_count = 0;
    for (auto [e, c] : count)
      if (c > best_count) {
        best = e;
        best_count = c;
      }
    return best;
  }

  const Instance& inst_;
  std::vector<uint8_t> state_;
  std::vector<BnbHabitat> habs_;
  std::vector<SubgraphChecker> checker_;
  bool unit_costs_ = false;
};

Solution make_optimal(const Instance& inst, std::vector<EdgeId> selected, const char* origin) {
  Solution sol;
  sol.status = SolveStatus::Optimal;
  sol.selected = sorted_union(std::move(selected));
  sol.cost = inst.edge_set_cost(sol.selected);
  sol.yes = sol.cost <= inst.budget;
  sol.trace.push_back({origin, sol.selected});
  return sol;
}

Solution make_infeasible(const std::string& reason) {
  Solution sol;
  sol.status = SolveStatus::Infeasible;
  sol.trace.push_back({reason, {}});
  return sol;
}

Solution exhaustive_component(const Instance& comp) {
  std::vector<EdgeId> free_edges;
  for (EdgeId e = 0; e < comp.graph.edge_count(); ++e)
    if (!comp.forced[static_cast<size_t>(e)]) free_edges.push_back(e);
  if (free_edges.size() > 30) throw CapacityError("exhaustive search over too many free edges");

  std::vector<BnbHabitat> habs;
  std::vector<SubgraphChecker> checkers(comp.habitats.size());
  std::vector<uint64_t> forced_local(comp.habitats.size(), 0);
  // per habitat: free bit -> local bit (or -1)
  std::vector<std::vector<int>> free_to_local(comp.habitats.size());
  for (size_t hi = 0; hi < comp.habitats.size(); ++hi) {
    LocalEdges le = collect_local_edges(comp, comp.habitats[hi]);
    if (le.ids.size() > 64) throw CapacityError("habitat exceeds 64 induced edges");
    checkers[hi].reset(comp.habitats[hi].size(), le.ends);
    free_to_local[hi].assign(free_edges.size(), -1);
    for (size_t i = 0; i < le.ids.size(); ++i) {
      if (comp.forced[static_cast<size_t>(le.ids[i])]) forced_local[hi] |= 1ull << i;
      auto it = std::lower_bound(free_edges.begin(), free_edges.end(), le.ids[i]);
      if (it != free_edges.end() && *it == le.ids[i])
        free_to_local[hi][static_cast<size_t>(it - free_edges.begin())] = static_cast<int>(i);
    }
  }

  Cost best = kInfCost;
  uint64_t best_mask = 0;
  for (uint64_t mask = 0; mask < (1ull << free_edges.size()); ++mask) {
    Cost c = 0;
    for (size_t i = 0; i < free_edges.size(); ++i)
      if ((mask >> i) & 1) c += comp.cost[static_cast<size_t>(free_edges[i])];
    if (c >= best) continue;
    bool ok = true;
    for (size_t hi = 0; hi < comp.habitats.size() && ok; ++hi) {
      uint64_t local = forced_local[hi];
      for (size_t i = 0; i < free_edges.size(); ++i)
        if (((mask >> i) & 1) && free_to_local[hi][i] >= 0)
          local |= 1ull << free_to_local[hi][i];
      ok = checkers[hi].satisfies(local, comp.mode);
    }
    if (ok) {
      best = c;
      best_mask = mask;
    }
  }
  if (best >= kInfCost) return make_infeasible("exhaustive: no feasible selection");
  std::vector<EdgeId> selected = comp.forced_ids();
  for (size_t i = 0; i < free_edges.size(); ++i)
    if ((best_mask >> i) & 1) selected.push_back(free_edges[i]);
  return make_optimal(comp, std::move(selected), "exhaustive");
}

}  // namespace

Solution branch_and_bound(const Instance& component) {
  Bnb bnb(component);
  auto extra = bnb.run();
  if (!extra) return make_infeasible("branch_and_bound: no feasible selection");
  std::vector<EdgeId> selected = component.forced_ids();
  selected.insert(selected.end(), extra->begin(), extra->end());
  return make_optimal(component, std::move(selected), "branch_and_bound");
}

Solution solve_component(const Instance& component, ComponentShape shape,
                         const SolverOptions& options) {
  int free_count = 0;
  for (EdgeId e = 0; e < component.graph.edge_count(); ++e)
    if (!component.forced[static_cast<size_t>(e)]) ++free_count;

  try {
    switch (shape) {
      case ComponentShape::Singleton: {
        FeasibleFamily fam = enumerate_feasible(component, 0);
        if (fam.sets.empty()) return make_infeasible("singleton: empty feasible family");
        size_t best = 0;
        Cost best_cost = mask_cost(component, fam, fam.sets[0]);
        for (size_t i = 1; i < fam.sets.size(); ++i) {
          Cost c = mask_cost(component, fam, fam.sets[i]);
          if (c < best_cost) {
            best_cost = c;
            best = i;
          }
        }
        std::vector<EdgeId> selected = component.forced_ids();
        auto chosen = fam.edges_of(fam.sets[best]);
        selected.insert(selected.end(), chosen.begin(), chosen.end());
        return make_optimal(component, std::move(selected), "singleton");
      }
      case ComponentShape::Path:
      case ComponentShape::Cycle: {
        // recover the deterministic member order from the component itself
        BasicHabitatGraph hg = build(component);
        ComponentDecomposition d = decompose(component, hg);
        if (d.components.size() != 1)
          throw InputError("solve_component expects a single connected component");
        const auto& order = d.components[0].ordered_habitats;
        return shape == ComponentShape::Path ? dp_path(component, order)
                                             : dp_cycle(component, order);
      }
      case ComponentShape::Other:
        if (free_count <= options.exhaustive_threshold) return exhaustive_component(component);
        return branch_and_bound(component);
    }
  } catch (const CapacityError&) {
    // oversized families fall back to the exact search
    return branch_and_bound(component);
  }
  return branch_and_bound(component);
}

VerifyResult verify(const Instance& instance, std::span<const EdgeId> selected) {
  std::vector<EdgeId> sel(selected.begin(), selected.end());
  std::sort(sel.begin(), sel.end());
  sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
  for (EdgeId e : sel)
    if (e < 0 || e >= instance.graph.edge_count())
      return {false, "selected edge id " + std::to_string(e) + " out of range"};
  for (EdgeId e = 0; e < instance.graph.edge_count(); ++e)
    if (instance.forced[static_cast<size_t>(e)] && !std::binary_search(sel.begin(), sel.end(), e))
      return {false, "forced edge missing: " + std::to_string(e)};
  if (instance.edge_set_cost(sel) > instance.budget) return {false, "budget exceeded"};
  SubgraphChecker checker;
  for (size_t hi = 0; hi < instance.habitats.size(); ++hi) {
    const Habitat& h = instance.habitats[hi];
    LocalEdges le = collect_local_edges(instance, h);
    if (le.ids.size() > 64) {
      std::vector<EdgeId> inside;
      for (EdgeId e : sel) {
        const Edge& ed = instance.graph.edge(e);
        if (h.contains(ed.u) && h.contains(ed.v)) inside.push_back(e);
      }
      if (!satisfies(induced_subgraph(instance.graph, h, inside).graph, instance.mode))
        return {false, "habitat " + std::to_string(hi) + " fails 2-" +
                           to_string(instance.mode) + "-connectivity"};
      continue;
    }
    checker.reset(h.size(), le.ends);
    uint64_t mask = 0;
    for (size_t i = 0; i < le.ids.size(); ++i)
      if (std::binary_search(sel.begin(), sel.end(), le.ids[i])) mask |= 1ull << i;
    if (!checker.satisfies(mask, instance.mode))
      return {false, "habitat " + std::to_string(hi) + " fails 2-" + to_string(instance.mode) +
                         "-connectivity"};
  }
  return {true, ""};
}

RegimeDiagnostics regime_diagnostics(const Instance& reduced, const BasicHabitatGraph& hg,
                                     const ComponentDecomposition& decomposition) {
  RegimeDiagnostics diag;
  InstanceStats stats = instance_stats(reduced);
  if (stats.num_habitats == 0) return diag;

  auto component_union_size = [&](const Component& c) {
    return static_cast<int>(c.vertex_map.size());
  };

  if (stats.eta <= 4 && stats.delta <= 4) {
    diag.applicable_h4d4 = true;
    for (size_t i = 0; i < decomposition.components.size(); ++i)
      if (decomposition.components[i].habitat_indices.size() > 5) {
        diag.ok_h4d4 = false;
        diag.violations.push_back("component " + std::to_string(i) + " has " +
                                  std::to_string(decomposition.components[i].habitat_indices.size()) +
                                  " habitats in the (eta<=4, delta<=4) regime");
      }
  }

  if (stats.eta <= 4 && stats.delta == 5) {
    diag.applicable_h4d5 = true;
    // components with a triangle intersection are the pre-solved small ones
    for (size_t ci = 0; ci < decomposition.components.size(); ++ci) {
      const Component& c = decomposition.components[ci];
      bool has_triangle_pair = false;
      for (const MetaEdge& me : hg.meta_edges) {
        if (!std::binary_search(c.habitat_indices.begin(), c.habitat_indices.end(), me.h1))
          continue;
        std::vector<VertexId> common;
        const auto& a = reduced.habitats[static_cast<size_t>(me.h1)].vertices;
        const auto& b = reduced.habitats[static_cast<size_t>(me.h2)].vertices;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (common.size() != 3) continue;
        int edges_inside = 0;
        for (size_t x = 0; x < common.size(); ++x)
          for (size_t y = x + 1; y < common.size(); ++y)
            if (reduced.graph.find_edge(common[x], common[y])) ++edges_inside;
        if (edges_inside == 3) {
          has_triangle_pair = true;
          break;
        }
      }
      if (has_triangle_pair) {
        if (component_union_size(c) > 6) {
          diag.ok_h4d5 = false;
          diag.violations.push_back("triangle-intersecting component " + std::to_string(ci) +
                                    " spans more than 6 vertices");
        }
      } else if (c.shape == ComponentShape::Other) {
        diag.ok_h4d5 = false;
        diag.violations.push_back("component " + std::to_string(ci) +
                                  " is neither a path nor a cycle in the (eta<=4, delta=5) regime");
      }
    }
  }

  if (stats.eta <= 6 && stats.delta <= 3) {
    diag.applicable_h6d3 = true;
    for (size_t ci = 0; ci < decomposition.components.size(); ++ci) {
      const Component& c = decomposition.components[ci];
      bool has_size6 = false;
      for (int hi : c.habitat_indices)
        if (reduced.habitats[static_cast<size_t>(hi)].size() == 6) has_size6 = true;
      if (has_size6 && component_union_size(c) != 6) {
        diag.ok_h6d3 = false;
        diag.violations.push_back("component " + std::to_string(ci) +
                                  " contains a size-6 habitat but spans " +
                                  std::to_string(component_union_size(c)) + " vertices");
      }
    }
  }
  return diag;
}

Solution solve(const Instance& instance, const SolverOptions& options) {
  instance.validate();
  ReduceResult red = reduce(instance);
  if (red.infeasible) {
    Solution sol = make_infeasible("reduce: " + red.infeasible_reason);
    return sol;
  }
  const Instance& reduced = red.instance;
  BasicHabitatGraph hg = build(reduced);
  ComponentDecomposition decomp = decompose(reduced, hg);

  RegimeDiagnostics diag = regime_diagnostics(reduced, hg, decomp);
  std::vector<TraceRecord> diag_records;
  for (const std::string& v : diag.violations) diag_records.push_back({"diagnostic: " + v, {}});

  std::vector<Solution> parts(decomp.components.size());
  parallel_for(decomp.components.size(), [&](size_t i) {
    parts[i] = solve_component(decomp.components[i].sub_instance, decomp.components[i].shape,
                               options);
  });

  for (size_t i = 0; i < parts.size(); ++i)
    if (parts[i].status == SolveStatus::Infeasible) {
      Solution sol = make_infeasible("component " + std::to_string(i) + " (" +
                                     to_string(decomp.components[i].shape) + ") is infeasible");
      for (const TraceRecord& t : parts[i].trace) sol.trace.push_back(t);
      return sol;
    }

  // recombine on the input instance's edge ids; forced edges RR5 dropped are
  // still bought by every solution
  std::vector<EdgeId> selected = instance.forced_ids();
  selected.insert(selected.end(), red.deleted_forced.begin(), red.deleted_forced.end());
  for (EdgeId e = 0; e < reduced.graph.edge_count(); ++e)
    if (reduced.forced[static_cast<size_t>(e)])
      selected.push_back(red.edge_origin[static_cast<size_t>(e)]);
  Solution sol;
  sol.status = SolveStatus::Optimal;
  for (size_t i = 0; i < parts.size(); ++i) {
    const Component& c = decomp.components[i];
    std::vector<EdgeId> mapped;
    for (EdgeId e : parts[i].selected) {
      EdgeId reduced_id = c.edge_map[static_cast<size_t>(e)];
      mapped.push_back(red.edge_origin[static_cast<size_t>(reduced_id)]);
    }
    sol.trace.push_back({"component " + std::to_string(i) + " (" + to_string(c.shape) +
                             ") cost " + std::to_string(parts[i].cost),
                         mapped});
    selected.insert(selected.end(), mapped.begin(), mapped.end());
  }
  sol.selected = sorted_union(std::move(selected));
  sol.cost = instance.edge_set_cost(sol.selected);
  sol.yes = sol.cost <= instance.budget;
  for (const TraceRecord& t : diag_records) sol.trace.push_back(t);

  VerifyResult check = verify(instance, sol.selected);
  if (!check.ok && check.diagnostic != "budget exceeded")
    throw std::logic_error("solver self-check failed: " + check.diagnostic);
  return sol;
}

}  // namespace rgbp
