#include "powerflow/baselines.hpp"

#include <algorithm>

namespace powerflow {

namespace {

Schedule finish_policy(const WorkloadProfile& wp, const TransitionModel& tm,
                       const DeadlineSpec& dl, std::vector<LayerAssignment> seq, RailSet rails,
                       bool force_always_active) {
  Schedule s;
  s.assignment = std::move(seq);
  s.rails = std::move(rails);
  s.eval = evaluate_assignments(wp, tm, dl, s.assignment, force_always_active);
  s.feasible = s.eval.feasible;
  return s;
}

std::vector<LayerAssignment> nominal_assignments(const WorkloadProfile& wp) {
  const std::size_t d = wp.domains.size();
  std::vector<LayerAssignment> seq(wp.layers.size());
  for (auto& la : seq) {
    la.assignment_mv.assign(d, wp.v_nom_mv);
    la.gated_window_mask.assign(d, 0);
  }
  return seq;
}

}  // namespace

Schedule baseline_nominal(const WorkloadProfile& wp, const TransitionModel& tm,
                          const DeadlineSpec& dl) {
  Schedule s = finish_policy(wp, tm, dl, nominal_assignments(wp),
                             make_rail_set({wp.v_nom_mv}), /*force_always_active=*/true);
  if (!s.feasible)
    throw InfeasibleError("infeasible at nominal: T_infer " +
                              std::to_string(s.eval.t_infer_ps) + " ps exceeds deadline " +
                              std::to_string(dl.t_max_ps) + " ps",
                          s.eval.t_infer_ps);
  return s;
}

Schedule baseline_gating(const WorkloadProfile& wp, const TransitionModel& tm,
                         const DeadlineSpec& dl) {
  std::vector<LayerAssignment> seq = nominal_assignments(wp);
  for (std::size_t i = 0; i < wp.layers.size(); ++i) {
    const LayerProfile& layer = wp.layers[i];
    const StateCost base = evaluate_state(wp, layer, seq[i].assignment_mv, seq[i].gated_window_mask);
    for (std::size_t d = 0; d < wp.domains.size(); ++d) {
      if (wp.domains[d].kind != DomainKind::gated_bank) continue;
      seq[i].gated_window_mask[d] = plan_bank_gating(wp, layer, d, wp.v_nom_mv, base.t_op_ps).mask;
    }
  }
  // Window gating has no latency cost, so feasibility matches nominal.
  return finish_policy(wp, tm, dl, std::move(seq), make_rail_set({wp.v_nom_mv}),
                       /*force_always_active=*/false);
}

Schedule baseline_greedy_dvfs(const WorkloadProfile& wp, const TransitionModel& tm,
                              const DeadlineSpec& dl, const VoltageMenu& menu, bool gating) {
  const RailSet menu_rails = make_rail_set(menu.levels());
  const std::size_t L = wp.layers.size();
  std::vector<std::vector<PowerState>> cands(L);
  for (std::size_t i = 0; i < L; ++i) {
    std::vector<PowerState> all = enumerate_states(wp, wp.layers[i], menu_rails).states;
    if (!gating) {
      std::erase_if(all, [](const PowerState& st) {
        if (std::any_of(st.gated_window_mask.begin(), st.gated_window_mask.end(),
                        [](u32 m) { return m != 0; }))
          return true;
        return std::any_of(st.assignment_mv.begin(), st.assignment_mv.end(),
                           [](Millivolt v) { return v == 0; });
      });
    }
    if (all.empty()) throw ModelError("layer has no candidate states");
    cands[i] = std::move(all);
  }

  // Start at per-layer minimum op energy (ties: faster, then first listed).
  std::vector<i32> pick(L, 0);
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t k = 1; k < cands[i].size(); ++k) {
      const PowerState& a = cands[i][k];
      const PowerState& b = cands[i][pick[i]];
      if (a.e_op_fj < b.e_op_fj || (a.e_op_fj == b.e_op_fj && a.t_op_ps < b.t_op_ps))
        pick[i] = static_cast<i32>(k);
    }

  auto assemble = [&] {
    std::vector<LayerAssignment> seq(L);
    for (std::size_t i = 0; i < L; ++i) {
      const PowerState& st = cands[i][pick[i]];
      seq[i] = {st.assignment_mv, st.gated_window_mask};
    }
    return seq;
  };

  // Upgrade loop: selection ignores transition terms (layer-local ratios on
  // op costs only); the stopping test uses the fully costed schedule.
  while (true) {
    ScheduleEval ev = evaluate_assignments(wp, tm, dl, assemble());
    if (ev.feasible) break;
    std::size_t bi = L;
    i32 bk = -1;
    i64 best_dt = 0, best_de = 0;
    // Pass 1: strictly improving upgrades (faster at no op-energy cost).
    for (std::size_t i = 0; i < L; ++i) {
      const PowerState& cur = cands[i][pick[i]];
      for (std::size_t k = 0; k < cands[i].size(); ++k) {
        if (static_cast<i32>(k) == pick[i]) continue;
        const i64 dt = cands[i][k].t_op_ps - cur.t_op_ps;
        const i64 de = cands[i][k].e_op_fj - cur.e_op_fj;
        if (dt >= 0 || de > 0) continue;
        if (bk < 0 || dt < best_dt || (dt == best_dt && de < best_de)) {
          bi = i;
          bk = static_cast<i32>(k);
          best_dt = dt;
          best_de = de;
        }
      }
    }
    if (bk < 0) {
      // Pass 2: best latency-saved-per-energy-added ratio.
      i128 bn = 0, bd = 1;
      for (std::size_t i = 0; i < L; ++i) {
        const PowerState& cur = cands[i][pick[i]];
        for (std::size_t k = 0; k < cands[i].size(); ++k) {
          if (static_cast<i32>(k) == pick[i]) continue;
          const i64 dt = cands[i][k].t_op_ps - cur.t_op_ps;
          const i64 de = cands[i][k].e_op_fj - cur.e_op_fj;
          if (dt >= 0 || de <= 0) continue;
          if (bk < 0 || (i128)(-dt) * bd > bn * de) {
            bn = -dt;
            bd = de;
            bi = i;
            bk = static_cast<i32>(k);
          }
        }
      }
    }
    if (bk < 0)
      throw InfeasibleError("greedy failed to meet deadline: T_infer " +
                                std::to_string(ev.t_infer_ps) + " ps exceeds deadline " +
                                std::to_string(dl.t_max_ps) + " ps",
                            ev.t_infer_ps);
    pick[bi] = bk;
  }
  return finish_policy(wp, tm, dl, assemble(), menu_rails, /*force_always_active=*/false);
}

}  // namespace powerflow
