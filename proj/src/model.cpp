#include "powerflow/model.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

namespace powerflow {

Rational parse_decimal_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  std::size_t dot = text.find('.');
  std::string ipart = dot == std::string::npos ? text : text.substr(0, dot);
  std::string fpart = dot == std::string::npos ? "" : text.substr(dot + 1);
  if (ipart.empty() && fpart.empty()) throw std::invalid_argument("malformed number: " + text);
  if (fpart.size() > 12) throw std::invalid_argument("too many decimal places: " + text);
  i64 num = 0;
  for (const std::string& part : {ipart, fpart})
    for (char c : part) {
      if (c < '0' || c > '9') throw std::invalid_argument("malformed number: " + text);
      if (num > (INT64_MAX - 9) / 10) throw std::invalid_argument("number out of range: " + text);
      num = num * 10 + (c - '0');
    }
  i64 den = 1;
  for (std::size_t i = 0; i < fpart.size(); ++i) den *= 10;
  return Rational(num, den);
}

std::string format_rational_decimal(i64 num, i64 den, int places) {
  if (den <= 0) throw std::invalid_argument("non-positive denominator");
  if (places < 0 || places > 18) throw std::invalid_argument("places out of range [0,18]");
  bool neg = num < 0;
  i128 n = neg ? -(i128)num : (i128)num;
  i128 scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  i64 scaled = half_up_div(n * scale, den);
  i64 whole = scaled / (places ? static_cast<i64>(scale) : 1);
  i64 frac = places ? scaled % static_cast<i64>(scale) : 0;
  std::string out = neg && scaled != 0 ? "-" : "";
  out += std::to_string(whole);
  if (places > 0) {
    const std::string f = std::to_string(frac);
    out += '.';
    out.append(places - f.size(), '0');
    out += f;
  }
  return out;
}

void VoltageMenu::validate() const {
  if (v_step_mv <= 0) throw ValidationError("voltage menu step must be positive");
  if (v_min_mv <= 0) throw ValidationError("voltage menu minimum must be positive");
  if (v_max_mv < v_min_mv) throw ValidationError("voltage menu maximum below minimum");
  if ((v_max_mv - v_min_mv) % v_step_mv != 0)
    throw ValidationError("voltage menu span must be a multiple of the step");
}

bool RailSet::contains(Millivolt v) const {
  return std::binary_search(rails_mv.begin(), rails_mv.end(), v);
}

std::string RailSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rails_mv.size(); ++i) {
    if (i) out += '|';
    out += std::to_string(rails_mv[i]);
  }
  return out;
}

RailSet make_rail_set(std::vector<Millivolt> rails) {
  std::sort(rails.begin(), rails.end());
  rails.erase(std::unique(rails.begin(), rails.end()), rails.end());
  if (rails.empty()) throw ValidationError("rail set must not be empty");
  if (rails.front() <= 0) throw ValidationError("rail voltages must be positive");
  return RailSet{std::move(rails)};
}

Kilohertz scale_frequency(const DomainSpec& d, Millivolt v_mv, Millivolt v_nom_mv) {
  if (v_mv == 0) throw ModelError("frequency undefined for gated domain");
  if (!d.vf_override.empty()) {
    for (const VfPoint& p : d.vf_override)
      if (p.v_mv == v_mv) return p.f_khz;
    throw ModelError("no V-f point for " + std::to_string(v_mv) + " mV on domain " + d.name);
  }
  return floor_div((i128)d.f_nom_khz * v_mv, v_nom_mv);
}

Femtojoule scale_dynamic_energy(Femtojoule e_nom_fj, Millivolt v_mv, Millivolt v_nom_mv) {
  if (e_nom_fj == 0) return 0;
  return half_up_div((i128)e_nom_fj * v_mv * v_mv, (i128)v_nom_mv * v_nom_mv);
}

Nanowatt leak_power(const DomainSpec& d, Millivolt v_mv, Millivolt v_nom_mv) {
  if (v_mv == 0) return 0;
  if (!d.leak_override.empty()) {
    for (const VleakPoint& p : d.leak_override)
      if (p.v_mv == v_mv) return p.leak_nw;
    throw ModelError("no V-leak point for " + std::to_string(v_mv) + " mV on domain " + d.name);
  }
  return half_up_div((i128)d.leak_nom_nw * v_mv, v_nom_mv);
}

Picosecond window_duration_ps(const IdleWindow& w, Picosecond t_op_ps) {
  return floor_div((i128)t_op_ps * (w.end_ppm - w.start_ppm), kPpm);
}

StateCost evaluate_state(const WorkloadProfile& wp, const LayerProfile& layer,
                         std::span<const Millivolt> assignment_mv,
                         std::span<const u32> gated_window_mask) {
  const std::size_t nd = wp.domains.size();
  if (assignment_mv.size() != nd)
    throw ModelError("assignment size mismatch for layer " + std::to_string(layer.layer_id));
  StateCost out;

  // Latency: slowest active dvfs domain.
  for (std::size_t di = 0; di < nd; ++di) {
    const DomainSpec& d = wp.domains[di];
    const DomainActivity& act = layer.activity[di];
    if (assignment_mv[di] == 0) {
      if (act.cycles > 0 || act.dyn_fj > 0 || act.active_ppm > 0)
        throw ModelError("infeasible state: gated domain " + d.name + " has work in layer " +
                         std::to_string(layer.layer_id));
      continue;
    }
    if (d.kind == DomainKind::dvfs && act.cycles > 0) {
      Kilohertz f = scale_frequency(d, assignment_mv[di], wp.v_nom_mv);
      if (f <= 0) throw ModelError("zero frequency on domain " + d.name);
      out.t_op_ps = std::max<i64>(out.t_op_ps, ceil_div((i128)act.cycles * 1'000'000'000, f));
    }
  }

  // Energy: dynamic + leakage over the powered time, plus in-layer wakes.
  for (std::size_t di = 0; di < nd; ++di) {
    const DomainSpec& d = wp.domains[di];
    const DomainActivity& act = layer.activity[di];
    const Millivolt v = assignment_mv[di];
    if (v == 0) continue;
    out.e_dyn_fj += scale_dynamic_energy(act.dyn_fj, v, wp.v_nom_mv);
    Nanowatt lk = leak_power(d, v, wp.v_nom_mv);
    out.leak_nw += lk;
    Picosecond powered_ps = out.t_op_ps;
    if (di < gated_window_mask.size() && gated_window_mask[di] != 0) {
      u32 mask = gated_window_mask[di];
      u32 wi = 0;
      for (const IdleWindow& w : layer.idle_windows) {
        if (w.domain_id != static_cast<i32>(di)) continue;
        if (mask & (1u << wi)) {
          powered_ps -= window_duration_ps(w, out.t_op_ps);
          out.e_wake_fj += d.wake_energy_fj;
          ++out.wake_events;
        }
        ++wi;
      }
      if (powered_ps < 0) powered_ps = 0;
    }
    out.e_leak_fj += half_up_div((i128)lk * powered_ps, kFinePerFj);
  }
  out.e_op_fj = out.e_dyn_fj + out.e_leak_fj + out.e_wake_fj;
  return out;
}

TransitionCost transition_cost(const WorkloadProfile& wp, const TransitionModel& tm,
                               std::span<const Millivolt> prev_mv,
                               std::span<const Millivolt> next_mv) {
  TransitionCost out;
  const i128 swing = (i128)tm.swing_hi_mv * tm.swing_hi_mv - (i128)tm.swing_lo_mv * tm.swing_lo_mv;
  for (std::size_t di = 0; di < wp.domains.size(); ++di) {
    const Millivolt a = prev_mv[di];
    const Millivolt b = next_mv[di];
    if (a == b) continue;
    const DomainSpec& d = wp.domains[di];
    if (a == 0) {  // wake
      out.t_ps = std::max(out.t_ps, d.wake_latency_ps);
      out.e_fj += d.wake_energy_fj;
      ++out.wake_events;
    } else if (b == 0) {
      // Turning a domain off is free; its wake is paid on re-activation.
    } else {  // rail change
      out.t_ps = std::max(out.t_ps, tm.dvfs_switch_latency_ps);
      const Millivolt lo = a < b ? a : b;
      const Millivolt hi = a < b ? b : a;
      i128 dv2 = (i128)hi * hi - (i128)lo * lo;
      out.e_fj += half_up_div((i128)tm.base_switch_energy_fj * d.cap_scale_ppm * dv2,
                              (i128)kPpm * swing);
      ++out.rail_switches;
    }
  }
  return out;
}

Femtojoule idle_energy(const DeadlineSpec& dl, Picosecond t_infer_ps, int z) {
  if (t_infer_ps > dl.t_max_ps) throw ModelError("deadline violated");
  if (z == 0) return dl.duty.wake_energy_fj;
  return half_up_div((i128)dl.idle_power_nw * (dl.t_max_ps - t_infer_ps), kFinePerFj);
}

bool power_down_fits(const DeadlineSpec& dl, Picosecond t_infer_ps) {
  return dl.duty.power_down_allowed && dl.t_max_ps - t_infer_ps >= dl.duty.wake_latency_ps;
}

ScheduleEval evaluate_assignments(const WorkloadProfile& wp, const TransitionModel& tm,
                                  const DeadlineSpec& dl,
                                  const std::vector<LayerAssignment>& seq,
                                  bool force_always_active) {
  if (seq.size() != wp.layers.size()) throw ModelError("schedule length mismatch");
  ScheduleEval ev;
  ev.rows.resize(seq.size());
  Femtojoule e_dyn = 0, e_leak = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    StateCost sc = evaluate_state(wp, wp.layers[i], seq[i].assignment_mv, seq[i].gated_window_mask);
    LayerRow& row = ev.rows[i];
    row.t_op_ps = sc.t_op_ps;
    row.e_op_fj = sc.e_op_fj;
    row.wake_events = sc.wake_events;
    e_dyn += sc.e_dyn_fj;
    e_leak += sc.e_leak_fj;
    ev.e_op_fj += sc.e_op_fj;
    ev.t_infer_ps += sc.t_op_ps;
    ev.wake_events += sc.wake_events;
    if (i > 0) {
      TransitionCost tc =
          transition_cost(wp, tm, seq[i - 1].assignment_mv, seq[i].assignment_mv);
      row.t_trans_ps = tc.t_ps;
      row.e_trans_fj = tc.e_fj;
      row.rail_switches = tc.rail_switches;
      row.wake_events += tc.wake_events;
      ev.e_trans_fj += tc.e_fj;
      ev.t_infer_ps += tc.t_ps;
      ev.rail_switches += tc.rail_switches;
      ev.wake_events += tc.wake_events;
    }
  }
  // Switch charge and wake energies are both capacitive/dynamic; in-layer
  // wakes are the non-dyn, non-leak remainder of e_op.
  const Femtojoule e_dyn_extra = ev.e_trans_fj + (ev.e_op_fj - e_dyn - e_leak);

  ev.slack_ps = dl.t_max_ps - ev.t_infer_ps;
  ev.feasible = ev.slack_ps >= 0;
  i128 path_fine = (i128)(ev.e_op_fj + ev.e_trans_fj) * kFinePerFj;
  if (ev.feasible) {
    Femtojoule idle1 = idle_energy(dl, ev.t_infer_ps, 1);
    i128 idle1_fine = (i128)dl.idle_power_nw * ev.slack_ps;
    ev.z = 1;
    ev.e_idle_fj = idle1;
    ev.e_tot_fine = path_fine + idle1_fine;
    if (!force_always_active && power_down_fits(dl, ev.t_infer_ps)) {
      i128 idle0_fine = (i128)dl.duty.wake_energy_fj * kFinePerFj;
      if (idle0_fine < idle1_fine) {
        ev.z = 0;
        ev.e_idle_fj = dl.duty.wake_energy_fj;
        ev.e_tot_fine = path_fine + idle0_fine;
      }
    }
  } else {
    ev.z = 1;
    ev.e_idle_fj = 0;
    ev.e_tot_fine = path_fine;
  }
  ev.e_tot_fj = ev.e_op_fj + ev.e_trans_fj + ev.e_idle_fj;
  ev.e_dynamic_fj = e_dyn + e_dyn_extra + (ev.z == 0 ? ev.e_idle_fj : 0);
  ev.e_static_fj = e_leak + (ev.z == 1 ? ev.e_idle_fj : 0);
  return ev;
}

}  // namespace powerflow
