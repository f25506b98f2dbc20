#pragma once

#include "powerflow/solver.hpp"

// Comparison policies. Each produces a Schedule costed by the same model as
// the solvers (decomposition identities and feasibility checks apply
// unchanged); none of them performs rail-subset selection.

namespace powerflow {

// Every domain at V_nom on every layer, no gating, idle always-active (z=1).
// Throws InfeasibleError("infeasible at nominal") when the deadline is
// missed even at full voltage.
Schedule baseline_nominal(const WorkloadProfile& wp, const TransitionModel& tm,
                          const DeadlineSpec& dl);

// Nominal voltages plus break-even gating of each declared idle window
// (fully idle banks are covered by their whole-layer windows). Window gating
// never adds latency, so feasibility matches the nominal baseline; the
// always-active idle pin is dropped.
Schedule baseline_gating(const WorkloadProfile& wp, const TransitionModel& tm,
                         const DeadlineSpec& dl);

// Layer-local greedy DVFS over the full voltage menu: start at per-layer
// minimum-energy states, then while the true T_infer (transitions included)
// misses the deadline, apply the single-layer upgrade with the best
// latency-saved-per-energy-added ratio computed without transition terms.
// `gating` admits bank-gated states into the per-layer candidate sets.
// Throws InfeasibleError("greedy failed to meet deadline") when upgrades run
// out while still infeasible.
Schedule baseline_greedy_dvfs(const WorkloadProfile& wp, const TransitionModel& tm,
                              const DeadlineSpec& dl, const VoltageMenu& menu, bool gating);

}  // namespace powerflow
