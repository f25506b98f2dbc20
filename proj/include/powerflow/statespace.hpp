#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "powerflow/model.hpp"

namespace powerflow {

using BigInt = boost::multiprecision::cpp_int;

// One candidate power state of a layer: per-domain rail assignment (0 =
// gated for the whole layer) plus per-domain masks of gated idle windows,
// with its evaluated cost attached.
struct PowerState {
  std::vector<Millivolt> assignment_mv;
  std::vector<u32> gated_window_mask;
  Picosecond t_op_ps = 0;
  Femtojoule e_op_fj = 0;
  Nanowatt leak_nw = 0;
  i32 wake_events = 0;
  std::vector<Millivolt> voltage_set;  // distinct non-gated levels, ascending
};

struct LayerCandidates {
  i32 layer_id = 0;
  std::vector<PowerState> states;
};

struct GatingPlan {
  u32 mask = 0;
  Femtojoule saved_fj = 0;  // net of wake energy
  i32 wake_events = 0;
};

// Greedy per-window break-even: gate a window iff the leakage it holds
// (at the bank's rail, over the window's share of t_op) strictly exceeds the
// wake energy AND the window outlasts the wake latency. Windows are disjoint,
// so per-window greedy is exact.
GatingPlan plan_bank_gating(const WorkloadProfile& wp, const LayerProfile& layer,
                            std::size_t domain_index, Millivolt v_mv, Picosecond t_op_ps);

// Candidate states of one layer under a rail set, in deterministic order:
// the cartesian product of rail choices over dvfs domains with work (earlier
// domain most significant, voltages ascending), crossed with per-bank options
// (run-at-rail first, then the break-even gating plan when it gates any
// window). Banks always sit on the lowest rail: they add no latency and
// every energy term shrinks with voltage, so any higher rail is dominated.
// Idle dvfs domains are pinned to the lowest rail.
LayerCandidates enumerate_states(const WorkloadProfile& wp, const LayerProfile& layer,
                                 const RailSet& rails);

// Removes states dominated by one whose voltage set is a subset and whose
// (e_op, t_op, leak) is no worse, at least one strictly. Keeps input order;
// idempotent; survivors form an antichain under the dominance relation.
std::vector<PowerState> structure_prune(const std::vector<PowerState>& states);

// Upper bound on the number of distinct schedules:
//   sum_{k=1}^{min(n_max,|V|)} C(|V|, k) * (k+1)^(D*L)
// (choose k rails, then each of D domains in each of L layers is on one of
// the k rails or gated).
BigInt schedule_space_bound(int menu_levels, int n_max, int domains, int layers);

// Layered DAG over per-layer candidates with transition costs materialized.
struct LayeredStateGraph {
  RailSet rails;
  TransitionModel tm;
  std::vector<LayerCandidates> layers;
  // edges[i] is a |S_i| x |S_{i+1}| row-major matrix of transition costs
  // between layer i and i+1 (size layers-1).
  std::vector<std::vector<TransitionCost>> edges;
  i64 state_count = 0;
  i64 edge_count = 0;  // sum |S_i|*|S_{i+1}|

  const TransitionCost& edge(std::size_t i, std::size_t a, std::size_t b) const {
    return edges[i][a * layers[i + 1].states.size() + b];
  }
};

LayeredStateGraph build_graph(const WorkloadProfile& wp, const TransitionModel& tm,
                              const RailSet& rails, bool prune);

}  // namespace powerflow
