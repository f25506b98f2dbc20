#pragma once

#include <span>
#include <string>
#include <vector>

#include "powerflow/errors.hpp"
#include "powerflow/units.hpp"

namespace powerflow {

// ---------------------------------------------------------------------------
// Voltage menu and rail sets
// ---------------------------------------------------------------------------

struct VoltageMenu {
  Millivolt v_min_mv = 900;
  Millivolt v_max_mv = 1300;
  i32 v_step_mv = 50;

  i32 level_count() const { return (v_max_mv - v_min_mv) / v_step_mv + 1; }
  bool contains(Millivolt v) const {
    return v >= v_min_mv && v <= v_max_mv && (v - v_min_mv) % v_step_mv == 0;
  }
  std::vector<Millivolt> levels() const {
    std::vector<Millivolt> out;
    for (Millivolt v = v_min_mv; v <= v_max_mv; v += v_step_mv) out.push_back(v);
    return out;
  }
  void validate() const;
};

// Sorted ascending, non-empty, distinct. Level 0 never appears here: "gated"
// is an assignment value, not a rail.
struct RailSet {
  std::vector<Millivolt> rails_mv;

  Millivolt min_rail() const { return rails_mv.front(); }
  Millivolt max_rail() const { return rails_mv.back(); }
  std::size_t size() const { return rails_mv.size(); }
  bool contains(Millivolt v) const;
  std::string to_string() const;  // "900|1100|1300"
};

RailSet make_rail_set(std::vector<Millivolt> rails);

// ---------------------------------------------------------------------------
// Hardware description
// ---------------------------------------------------------------------------

enum class DomainKind { dvfs, gated_bank };

struct VfPoint {
  Millivolt v_mv;
  Kilohertz f_khz;
};
struct VleakPoint {
  Millivolt v_mv;
  Nanowatt leak_nw;
};

struct DomainSpec {
  i32 id = 0;  // must equal its index in WorkloadProfile::domains
  std::string name;
  DomainKind kind = DomainKind::dvfs;
  Kilohertz f_nom_khz = 0;        // dvfs only; banks carry no clock
  i64 cap_scale_ppm = kPpm;       // relative switched capacitance, 1e6 = 1.0
  Nanowatt leak_nom_nw = 0;       // leakage at v_nom
  Femtojoule wake_energy_fj = 0;  // gated_bank only
  Picosecond wake_latency_ps = 0; // gated_bank only
  std::vector<VfPoint> vf_override;       // optional; sorted by v, overrides linear V-f
  std::vector<VleakPoint> leak_override;  // optional; sorted by v, overrides linear V-leak
};

// Per-layer, per-domain demand. Aligned by position with the domain list.
struct DomainActivity {
  i64 cycles = 0;
  Femtojoule dyn_fj = 0;      // dynamic energy at v_nom
  i64 active_ppm = 0;         // fraction of the layer the domain must be powered
};

// Idle interval of a gated_bank domain, as fractions of the layer duration.
struct IdleWindow {
  i32 domain_id = 0;
  i64 start_ppm = 0;
  i64 end_ppm = 0;
};

struct LayerProfile {
  i32 layer_id = 0;
  std::string op_kind;
  std::vector<DomainActivity> activity;   // size == domain count
  std::vector<IdleWindow> idle_windows;   // sorted by (domain_id, start_ppm)
};

struct WorkloadProfile {
  std::string name;
  Millivolt v_nom_mv = 1200;
  std::vector<DomainSpec> domains;
  std::vector<LayerProfile> layers;
};

// ---------------------------------------------------------------------------
// Transition and deadline models
// ---------------------------------------------------------------------------

struct TransitionModel {
  Picosecond dvfs_switch_latency_ps = 15'000;
  Picosecond default_wake_latency_ps = 5'000;
  Femtojoule base_switch_energy_fj = 1'000'000;  // full-swing rail charge at cap_scale 1.0
  // Swing anchors for normalizing switch energy; (v_hi^2 - v_lo^2) maps to
  // base_switch_energy at cap_scale 1.0.
  Millivolt swing_lo_mv = 900;
  Millivolt swing_hi_mv = 1300;
};

struct DutyConfig {
  bool power_down_allowed = false;  // z=0 available between inferences
  Femtojoule wake_energy_fj = 0;    // flat cost of a power-down/wake cycle
  Picosecond wake_latency_ps = 0;   // must fit within slack for z=0
};

struct DeadlineSpec {
  Picosecond t_max_ps = 0;
  Nanowatt idle_power_nw = 0;  // chip-level draw while waiting (z=1)
  DutyConfig duty;
};

// ---------------------------------------------------------------------------
// Model operations
// ---------------------------------------------------------------------------

// Linear V-f unless the domain has an override table: f = f_nom * v / v_nom,
// floored to kHz. Throws ModelError("frequency undefined for gated domain")
// when v == 0.
Kilohertz scale_frequency(const DomainSpec& d, Millivolt v_mv, Millivolt v_nom_mv);

// CV^2 scaling, half-up: e * (v/v_nom)^2.
Femtojoule scale_dynamic_energy(Femtojoule e_nom_fj, Millivolt v_mv, Millivolt v_nom_mv);

// Linear leakage unless overridden: P * v / v_nom, half-up. Gated -> 0.
Nanowatt leak_power(const DomainSpec& d, Millivolt v_mv, Millivolt v_nom_mv);

// Duration of an idle window at a given layer duration, floored.
Picosecond window_duration_ps(const IdleWindow& w, Picosecond t_op_ps);

struct StateCost {
  Picosecond t_op_ps = 0;
  Femtojoule e_op_fj = 0;
  Nanowatt leak_nw = 0;       // instantaneous leakage of powered domains
  Femtojoule e_dyn_fj = 0;    // dynamic component of e_op
  Femtojoule e_leak_fj = 0;   // leakage component of e_op
  Femtojoule e_wake_fj = 0;   // in-layer bank wake events
  i32 wake_events = 0;
};

// Evaluates one layer under a per-domain assignment (mV; 0 = gated for the
// whole layer) and per-domain masks of gated idle windows (bit k = k-th idle
// window of that domain in file order). Layer latency is the slowest active
// dvfs domain; banks contribute energy only. Throws ModelError("infeasible
// state") when a gated domain still has work.
StateCost evaluate_state(const WorkloadProfile& wp, const LayerProfile& layer,
                         std::span<const Millivolt> assignment_mv,
                         std::span<const u32> gated_window_mask);

struct TransitionCost {
  Picosecond t_ps = 0;
  Femtojoule e_fj = 0;
  i32 rail_switches = 0;
  i32 wake_events = 0;
};

// Per-domain costs between consecutive layer assignments. Domains switch in
// parallel (latency is the max), energies add. Rail change: switch latency
// plus charge energy scaled by cap_scale and the squared-voltage delta over
// the full menu swing. Gated -> active: the domain's wake cost. Active ->
// gated and unchanged assignments are free.
TransitionCost transition_cost(const WorkloadProfile& wp, const TransitionModel& tm,
                               std::span<const Millivolt> prev_mv,
                               std::span<const Millivolt> next_mv);

// Energy spent between the end of inference and the deadline. z=1: idle power
// over the slack, half-up. z=0: the flat duty wake cost (caller must check
// power_down_fits). Throws ModelError("deadline violated") if t_infer exceeds
// t_max.
Femtojoule idle_energy(const DeadlineSpec& dl, Picosecond t_infer_ps, int z);

// True when z=0 is permitted for this latency: duty cycling allowed and the
// wake latency fits inside the slack.
bool power_down_fits(const DeadlineSpec& dl, Picosecond t_infer_ps);

// ---------------------------------------------------------------------------
// Whole-schedule evaluation (the single costing path used by every policy)
// ---------------------------------------------------------------------------

struct LayerAssignment {
  std::vector<Millivolt> assignment_mv;
  std::vector<u32> gated_window_mask;
};

struct LayerRow {
  i64 t_op_ps = 0;
  i64 e_op_fj = 0;
  i64 t_trans_ps = 0;  // transition entering this layer (0 for layer 1)
  i64 e_trans_fj = 0;
  i32 rail_switches = 0;
  i32 wake_events = 0;  // transition wakes + in-layer plan wakes
};

struct ScheduleEval {
  bool feasible = false;
  int z = 1;
  Picosecond t_infer_ps = 0;
  Picosecond slack_ps = 0;  // t_max - t_infer, negative when infeasible
  Femtojoule e_op_fj = 0;
  Femtojoule e_trans_fj = 0;
  Femtojoule e_idle_fj = 0;
  Femtojoule e_tot_fj = 0;
  Femtojoule e_dynamic_fj = 0;
  Femtojoule e_static_fj = 0;
  i32 rail_switches = 0;
  i32 wake_events = 0;
  i128 e_tot_fine = 0;  // exact energy in nW*ps units (1 fJ = 1e6)
  std::vector<LayerRow> rows;
};

// Costs a complete assignment sequence. The duty decision (z) is made here:
// z=0 is taken when allowed, valid for the slack, and strictly cheaper in
// fine units (ties keep z=1). Infeasible sequences get e_idle = 0 and
// feasible = false; nothing throws. force_always_active pins z=1 regardless
// of duty config (the nominal policy's contract).
ScheduleEval evaluate_assignments(const WorkloadProfile& wp, const TransitionModel& tm,
                                  const DeadlineSpec& dl,
                                  const std::vector<LayerAssignment>& seq,
                                  bool force_always_active = false);

}  // namespace powerflow
