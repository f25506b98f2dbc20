#pragma once

#include "powerflow/baselines.hpp"

// Outer-loop rail selection: enumerate voltage-rail subsets, solve the inner
// scheduling problem per subset, keep the cheapest.

namespace powerflow {

enum class SolverKind { lambda, oracle, jump };

// All subsets of the menu of size 1..n_max (n_max clamped to |menu|), in
// deterministic order: size ascending, lexicographic within a size.
std::vector<RailSet> enumerate_rail_sets(const std::vector<Millivolt>& menu_mv, int n_max);

// n levels spanning the menu at indices round(k*(m-1)/(n-1)) (half-up);
// n == 1 yields the top level so the pick can never cost feasibility.
RailSet evenly_spaced_rails(const std::vector<Millivolt>& menu_mv, int n);

struct RailOptResult {
  RailSet rails;
  SolveResult result;
  int subsets_total = 0;
  int subsets_skipped = 0;   // pruned by the max-voltage feasibility bound
  int subsets_solved = 0;
};

// argmin E_tot over enumerate_rail_sets(menu, n_max). A subset whose uniform
// max-voltage schedule misses the deadline is skipped: that latency is a
// lower bound on any schedule the subset admits. Ties break toward fewer
// rails, then the lexicographically lower set. Throws
// InfeasibleError("infeasible for all rail sets") when nothing fits.
RailOptResult optimize_rails(const WorkloadProfile& wp, const TransitionModel& tm,
                             const DeadlineSpec& dl, const std::vector<Millivolt>& menu_mv,
                             int n_max, SolverKind solver = SolverKind::lambda,
                             bool prune = true);

// Dispatches one solve on a prebuilt graph (shared by optimize_rails and the
// CLI).
SolveResult run_solver(const LayeredStateGraph& g, const WorkloadProfile& wp,
                       const DeadlineSpec& dl, SolverKind solver,
                       const OracleOptions& oracle_opt = {});

}  // namespace powerflow
