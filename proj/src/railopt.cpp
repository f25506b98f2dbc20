#include "powerflow/railopt.hpp"

#include <algorithm>

namespace powerflow {

std::vector<RailSet> enumerate_rail_sets(const std::vector<Millivolt>& menu_mv, int n_max) {
  if (menu_mv.empty()) throw ValidationError("empty voltage menu");
  std::vector<Millivolt> menu = menu_mv;
  std::sort(menu.begin(), menu.end());
  const int m = static_cast<int>(menu.size());
  const int cap = std::min(n_max, m);
  if (cap < 1) throw ValidationError("rail count must be at least 1");
  std::vector<RailSet> out;
  for (int size = 1; size <= cap; ++size) {
    // standard lexicographic combination walk over menu indices
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      std::vector<Millivolt> rails(size);
      for (int i = 0; i < size; ++i) rails[i] = menu[idx[i]];
      out.push_back(make_rail_set(std::move(rails)));
      int i = size - 1;
      while (i >= 0 && idx[i] == m - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

RailSet evenly_spaced_rails(const std::vector<Millivolt>& menu_mv, int n) {
  if (menu_mv.empty()) throw ValidationError("empty voltage menu");
  std::vector<Millivolt> menu = menu_mv;
  std::sort(menu.begin(), menu.end());
  const int m = static_cast<int>(menu.size());
  if (n < 1 || n > m) throw ValidationError("rail count out of range for menu");
  if (n == 1) return make_rail_set({menu.back()});
  std::vector<Millivolt> rails;
  for (int k = 0; k < n; ++k) {
    const int idx = static_cast<int>(half_up_div((i128)k * (m - 1), n - 1));
    rails.push_back(menu[idx]);
  }
  return make_rail_set(std::move(rails));
}

SolveResult run_solver(const LayeredStateGraph& g, const WorkloadProfile& wp,
                       const DeadlineSpec& dl, SolverKind solver, const OracleOptions& oracle_opt) {
  switch (solver) {
    case SolverKind::oracle:
      return exact_oracle(g, wp, dl, oracle_opt);
    case SolverKind::jump:
      return marginal_utility_jump_search(g, wp, dl);
    case SolverKind::lambda:
    default:
      return solve_lambda_search(g, wp, dl);
  }
}

RailOptResult optimize_rails(const WorkloadProfile& wp, const TransitionModel& tm,
                             const DeadlineSpec& dl, const std::vector<Millivolt>& menu_mv,
                             int n_max, SolverKind solver, bool prune) {
  RailOptResult best;
  bool have = false;
  const std::vector<RailSet> sets = enumerate_rail_sets(menu_mv, n_max);
  best.subsets_total = static_cast<int>(sets.size());
  for (const RailSet& rs : sets) {
    // Feasibility bound: every layer at the subset's top rail minimizes
    // latency, and a uniform assignment pays no transitions.
    std::vector<LayerAssignment> fast(wp.layers.size());
    for (auto& la : fast) {
      la.assignment_mv.assign(wp.domains.size(), rs.max_rail());
      la.gated_window_mask.assign(wp.domains.size(), 0);
    }
    if (!evaluate_assignments(wp, tm, dl, fast).feasible) {
      ++best.subsets_skipped;
      continue;
    }
    LayeredStateGraph g = build_graph(wp, tm, rs, prune);
    SolveResult r;
    try {
      r = run_solver(g, wp, dl, solver);
    } catch (const InfeasibleError&) {
      ++best.subsets_solved;  // solved to a proof of infeasibility
      continue;
    }
    ++best.subsets_solved;
    r.stats.pruned = prune;
    const bool better =
        !have || r.schedule.eval.e_tot_fine < best.result.schedule.eval.e_tot_fine ||
        (r.schedule.eval.e_tot_fine == best.result.schedule.eval.e_tot_fine &&
         (rs.size() < best.rails.size() ||
          (rs.size() == best.rails.size() && rs.rails_mv < best.rails.rails_mv)));
    if (better) {
      best.rails = rs;
      best.result = std::move(r);
      have = true;
    }
  }
  if (!have) {
    // The uniform top-of-menu schedule is the fastest any subset can offer.
    const Millivolt v_top = *std::max_element(menu_mv.begin(), menu_mv.end());
    std::vector<LayerAssignment> fast(wp.layers.size());
    for (auto& la : fast) {
      la.assignment_mv.assign(wp.domains.size(), v_top);
      la.gated_window_mask.assign(wp.domains.size(), 0);
    }
    const ScheduleEval ev = evaluate_assignments(wp, tm, dl, fast);
    throw InfeasibleError("infeasible for all rail sets: minimum achievable latency " +
                              std::to_string(ev.t_infer_ps) + " ps exceeds deadline " +
                              std::to_string(dl.t_max_ps) + " ps",
                          ev.t_infer_ps);
  }
  return best;
}

}  // namespace powerflow
