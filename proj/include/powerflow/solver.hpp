#pragma once

#include <optional>

#include "powerflow/statespace.hpp"

namespace powerflow {

using Wide = boost::multiprecision::int256_t;

// Objective: minimize E_tot + lambda * T_infer, where E_tot includes the
// between-inference idle term. Costs are accumulated at nW*ps ("fine")
// resolution so the idle term stays exactly linear in path time:
//   weighted(path) = q * E_fine(path) + p * 1e6 * T(path),  lambda = p/q.
// Reported energies are rounded to fJ only at the boundary.

struct Schedule {
  std::vector<i32> state_index;           // per layer, into the graph it was solved on
  std::vector<LayerAssignment> assignment;
  RailSet rails;
  ScheduleEval eval;
  bool feasible = false;
};

struct LambdaTracePoint {
  Rational lambda;
  bool feasible = false;
  Femtojoule e_tot_fj = 0;
  Picosecond t_infer_ps = 0;
};

struct SolveStats {
  std::string solver;
  bool pruned = false;
  int dp_calls = 0;
  i64 oracle_labels = 0;
  i64 state_count = 0;
  i64 edge_count = 0;
  i64 solve_us = 0;       // search time, preprocessing excluded
  std::vector<LambdaTracePoint> trace;
  std::vector<Rational> jump_points;  // marginal-utility seeds, when used
};

struct SolveResult {
  Schedule schedule;
  SolveStats stats;
};

struct DpOutcome {
  Schedule schedule;
  Wide weighted_cost = 0;  // q*E_fine + p*1e6*T of the returned schedule
};

// Exact DP for the weighted objective at a fixed lambda. Ties break toward
// smaller T_infer, then the lexicographically smallest state index sequence.
// Always returns a schedule; feasibility is flagged, never thrown. When duty
// cycling is allowed the DP runs once per z mode and keeps the better
// candidate under the true objective (z chosen per final path).
DpOutcome dp_fixed_lambda(const LayeredStateGraph& g, const WorkloadProfile& wp,
                          const DeadlineSpec& dl, const Rational& lambda);

/// Minimum-latency schedule (the lambda -> infinity limit): smallest T_infer,
// ties by path energy, then lex order.
Schedule min_latency_schedule(const LayeredStateGraph& g, const WorkloadProfile& wp,
                              const DeadlineSpec& dl);

struct LambdaSearchOptions {
  int max_iterations = 64;
  int width_bits = 32;         // stop when bracket width < 2^-width_bits
  i64 bracket_cap = i64(1) << 62;
};

// lambda = 0 first (optimal when feasible); otherwise bracket by doubling
// from 1 fJ/ps, then binary search, keeping the best feasible schedule seen.
// Throws InfeasibleError("infeasible instance") when even the min-latency
// schedule misses the deadline.
SolveResult solve_lambda_search(const LayeredStateGraph& g, const WorkloadProfile& wp,
                                const DeadlineSpec& dl, const LambdaSearchOptions& opt = {});

struct OracleOptions {
  i64 label_cap = 10'000'000;
};

// Exact constrained optimum via per-node Pareto frontiers of (time, energy)
// labels. Labels beyond t_max are discarded; the retained-label count is
// capped (CapacityError("oracle capacity exceeded")).
SolveResult exact_oracle(const LayeredStateGraph& g, const WorkloadProfile& wp,
                         const DeadlineSpec& dl, const OracleOptions& opt = {});

/// Feasibility-driven greedy from the lambda=0 schedule: repeatedly apply the
// single-layer replacement with the best latency-reduction-per-energy ratio
// (transition edges to the fixed neighbors included; strict improvements
// first), recording each ratio as a candidate lambda. The recorded jump
// points then seed the bracket of a standard lambda search.
SolveResult marginal_utility_jump_search(const LayeredStateGraph& g, const WorkloadProfile& wp,
                                         const DeadlineSpec& dl,
                                         const LambdaSearchOptions& opt = {});

// Builds a Schedule (with full evaluation) from graph state indices.
Schedule make_schedule(const LayeredStateGraph& g, const WorkloadProfile& wp,
                       const DeadlineSpec& dl, const std::vector<i32>& picks);

// Weighted cost of an evaluated schedule at lambda = p/q (fine units). The
// deadline supplies the idle fold; past-deadline schedules extend the z=1
// idle term linearly (negative), keeping the objective total on all paths.
Wide weighted_cost_of(const ScheduleEval& ev, const DeadlineSpec& dl, const Rational& lambda);

}  // namespace powerflow
