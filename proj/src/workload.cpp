#include "powerflow/workload.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace powerflow {

namespace {

[[noreturn]] void fail(const std::string& ctx, const std::string& msg) {
  throw ValidationError(ctx + ": " + msg);
}

void check_keys(const Json& j, const std::string& ctx, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(ctx, "expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) known = true;
    if (!known) fail(ctx, "unknown field \"" + item.key() + "\"");
  }
}

const Json& need(const Json& j, const char* key, const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end()) fail(ctx, std::string("missing field \"") + key + "\"");
  return *it;
}

i64 need_int(const Json& j, const char* key, const std::string& ctx, i64 lo, i64 hi) {
  const Json& v = need(j, key, ctx);
  if (!v.is_number_integer())
    fail(ctx, std::string("field \"") + key + "\" must be an integer");
  const i64 x = v.get<i64>();
  if (x < lo || x > hi)
    fail(ctx, std::string("field \"") + key + "\" out of range [" + std::to_string(lo) + ", " +
                  std::to_string(hi) + "]");
  return x;
}

i64 opt_int(const Json& j, const char* key, const std::string& ctx, i64 lo, i64 hi, i64 dflt) {
  if (j.find(key) == j.end()) return dflt;
  return need_int(j, key, ctx, lo, hi);
}

std::string need_str(const Json& j, const char* key, const std::string& ctx) {
  const Json& v = need(j, key, ctx);
  if (!v.is_string()) fail(ctx, std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

bool need_bool(const Json& j, const char* key, const std::string& ctx) {
  const Json& v = need(j, key, ctx);
  if (!v.is_boolean()) fail(ctx, std::string("field \"") + key + "\" must be a boolean");
  return v.get<bool>();
}

constexpr i64 kMaxPs = 4'000'000'000'000'000LL;   // ~66 min; far above any deadline
constexpr i64 kMaxFj = 4'000'000'000'000'000LL;   // 4 J
constexpr i64 kMaxNw = 1'000'000'000'000LL;       // 1 kW
constexpr i64 kMaxKhz = 100'000'000LL;            // 100 GHz
constexpr i64 kMaxCycles = 4'000'000'000'000LL;

}  // namespace

ProfileDocument parse_profile(const Json& j) {
  const std::string ctx = "profile";
  check_keys(j, ctx,
             {"schema_version", "name", "v_nom_mv", "menu", "transition", "idle_power_nw", "duty",
              "domains", "layers"});
  ProfileDocument doc;
  doc.schema_version = need_str(j, "schema_version", ctx);
  if (doc.schema_version != "powerflow-profile-1")
    fail(ctx, "unrecognized schema_version \"" + doc.schema_version + "\"");
  doc.workload.name = need_str(j, "name", ctx);
  if (doc.workload.name.empty()) fail(ctx, "name must be non-empty");

  {
    const Json& m = need(j, "menu", ctx);
    const std::string mc = ctx + ".menu";
    check_keys(m, mc, {"v_min_mv", "v_max_mv", "v_step_mv"});
    doc.menu.v_min_mv = static_cast<Millivolt>(need_int(m, "v_min_mv", mc, 1, 100'000));
    doc.menu.v_max_mv = static_cast<Millivolt>(need_int(m, "v_max_mv", mc, 1, 100'000));
    doc.menu.v_step_mv = static_cast<Millivolt>(need_int(m, "v_step_mv", mc, 1, 100'000));
    doc.menu.validate();
  }
  doc.workload.v_nom_mv = static_cast<Millivolt>(need_int(j, "v_nom_mv", ctx, 1, 100'000));
  if (!doc.menu.contains(doc.workload.v_nom_mv))
    fail(ctx, "v_nom_mv " + std::to_string(doc.workload.v_nom_mv) + " is not a menu level");

  {
    const Json& t = need(j, "transition", ctx);
    const std::string tc = ctx + ".transition";
    check_keys(t, tc,
               {"dvfs_switch_latency_ps", "default_wake_latency_ps", "base_switch_energy_fj",
                "swing_lo_mv", "swing_hi_mv"});
    doc.transition.dvfs_switch_latency_ps = need_int(t, "dvfs_switch_latency_ps", tc, 0, kMaxPs);
    doc.transition.default_wake_latency_ps = need_int(t, "default_wake_latency_ps", tc, 0, kMaxPs);
    doc.transition.base_switch_energy_fj = need_int(t, "base_switch_energy_fj", tc, 0, kMaxFj);
    doc.transition.swing_lo_mv = static_cast<Millivolt>(need_int(t, "swing_lo_mv", tc, 0, 100'000));
    doc.transition.swing_hi_mv = static_cast<Millivolt>(need_int(t, "swing_hi_mv", tc, 1, 100'000));
    if (doc.transition.swing_hi_mv <= doc.transition.swing_lo_mv)
      fail(tc, "swing_hi_mv must exceed swing_lo_mv");
  }
  doc.idle_power_nw = need_int(j, "idle_power_nw", ctx, 0, kMaxNw);
  {
    const Json& d = need(j, "duty", ctx);
    const std::string dc = ctx + ".duty";
    check_keys(d, dc, {"power_down_allowed", "wake_energy_fj", "wake_latency_ps"});
    doc.duty.power_down_allowed = need_bool(d, "power_down_allowed", dc);
    doc.duty.wake_energy_fj = need_int(d, "wake_energy_fj", dc, 0, kMaxFj);
    doc.duty.wake_latency_ps = need_int(d, "wake_latency_ps", dc, 0, kMaxPs);
  }

  const Json& doms = need(j, "domains", ctx);
  if (!doms.is_array() || doms.empty()) fail(ctx, "domains must be a non-empty array");
  const std::vector<Millivolt> levels = doc.menu.levels();
  for (std::size_t i = 0; i < doms.size(); ++i) {
    const std::string dc = ctx + ".domains[" + std::to_string(i) + "]";
    const Json& d = doms[i];
    check_keys(d, dc,
               {"id", "name", "kind", "f_nom_khz", "cap_scale_ppm", "leak_nom_nw",
                "wake_energy_fj", "wake_latency_ps", "vf_override", "leak_override"});
    DomainSpec ds;
    ds.id = static_cast<i32>(need_int(d, "id", dc, 0, 1'000'000));
    if (ds.id != static_cast<i32>(i)) fail(dc, "id must equal array position");
    ds.name = need_str(d, "name", dc);
    if (ds.name.empty()) fail(dc, "name must be non-empty");
    const std::string kind = need_str(d, "kind", dc);
    if (kind == "dvfs")
      ds.kind = DomainKind::dvfs;
    else if (kind == "gated_bank")
      ds.kind = DomainKind::gated_bank;
    else
      fail(dc, "kind must be \"dvfs\" or \"gated_bank\"");
    ds.f_nom_khz = need_int(d, "f_nom_khz", dc, 0, kMaxKhz);
    if (ds.kind == DomainKind::dvfs && ds.f_nom_khz == 0)
      fail(dc, "dvfs domain requires f_nom_khz > 0");
    if (ds.kind == DomainKind::gated_bank && ds.f_nom_khz != 0)
      fail(dc, "gated_bank domain must have f_nom_khz = 0");
    ds.cap_scale_ppm = need_int(d, "cap_scale_ppm", dc, 1, 1'000'000'000);
    ds.leak_nom_nw = need_int(d, "leak_nom_nw", dc, 0, kMaxNw);
    ds.wake_energy_fj = need_int(d, "wake_energy_fj", dc, 0, kMaxFj);
    ds.wake_latency_ps =
        opt_int(d, "wake_latency_ps", dc, 0, kMaxPs, doc.transition.default_wake_latency_ps);
    if (auto it = d.find("vf_override"); it != d.end()) {
      const std::string oc = dc + ".vf_override";
      if (!it->is_array()) fail(oc, "must be an array");
      for (std::size_t k = 0; k < it->size(); ++k) {
        const Json& p = (*it)[k];
        const std::string pc = oc + "[" + std::to_string(k) + "]";
        check_keys(p, pc, {"v_mv", "f_khz"});
        VfPoint vp;
        vp.v_mv = static_cast<Millivolt>(need_int(p, "v_mv", pc, 1, 100'000));
        vp.f_khz = need_int(p, "f_khz", pc, 0, kMaxKhz);
        ds.vf_override.push_back(vp);
      }
      if (ds.kind != DomainKind::dvfs) fail(oc, "only dvfs domains take a V-f table");
      if (ds.vf_override.size() != levels.size())
        fail(oc, "table must cover every menu level exactly once");
      for (std::size_t k = 0; k < levels.size(); ++k) {
        if (ds.vf_override[k].v_mv != levels[k])
          fail(oc, "entries must list menu levels ascending");
        if (k > 0 && ds.vf_override[k].f_khz < ds.vf_override[k - 1].f_khz)
          fail(oc, "frequency must be non-decreasing in voltage");
      }
    }
    if (auto it = d.find("leak_override"); it != d.end()) {
      const std::string oc = dc + ".leak_override";
      if (!it->is_array()) fail(oc, "must be an array");
      for (std::size_t k = 0; k < it->size(); ++k) {
        const Json& p = (*it)[k];
        const std::string pc = oc + "[" + std::to_string(k) + "]";
        check_keys(p, pc, {"v_mv", "leak_nw"});
        VleakPoint vp;
        vp.v_mv = static_cast<Millivolt>(need_int(p, "v_mv", pc, 1, 100'000));
        vp.leak_nw = need_int(p, "leak_nw", pc, 0, kMaxNw);
        ds.leak_override.push_back(vp);
      }
      if (ds.leak_override.size() != levels.size())
        fail(oc, "table must cover every menu level exactly once");
      for (std::size_t k = 0; k < levels.size(); ++k) {
        if (ds.leak_override[k].v_mv != levels[k])
          fail(oc, "entries must list menu levels ascending");
        if (k > 0 && ds.leak_override[k].leak_nw < ds.leak_override[k - 1].leak_nw)
          fail(oc, "leakage must be non-decreasing in voltage");
      }
    }
    doc.workload.domains.push_back(std::move(ds));
  }

  const Json& layers = need(j, "layers", ctx);
  if (!layers.is_array() || layers.empty()) fail(ctx, "layers must be a non-empty array");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const std::string lc = ctx + ".layers[" + std::to_string(i) + "]";
    const Json& l = layers[i];
    check_keys(l, lc, {"layer_id", "op_kind", "activity", "idle_windows"});
    LayerProfile lp;
    lp.layer_id = static_cast<i32>(need_int(l, "layer_id", lc, 0, 1'000'000));
    if (lp.layer_id != static_cast<i32>(i)) fail(lc, "layer_id must equal array position");
    lp.op_kind = need_str(l, "op_kind", lc);
    if (lp.op_kind.empty()) fail(lc, "op_kind must be non-empty");
    const Json& act = need(l, "activity", lc);
    if (!act.is_array() || act.size() != doc.workload.domains.size())
      fail(lc, "activity must list one entry per domain");
    bool any_work = false;
    for (std::size_t d = 0; d < act.size(); ++d) {
      const std::string ac = lc + ".activity[" + std::to_string(d) + "]";
      const Json& a = act[d];
      check_keys(a, ac, {"cycles", "dyn_fj", "active_ppm"});
      DomainActivity da;
      da.cycles = need_int(a, "cycles", ac, 0, kMaxCycles);
      da.dyn_fj = need_int(a, "dyn_fj", ac, 0, kMaxFj);
      da.active_ppm = need_int(a, "active_ppm", ac, 0, kPpm);
      if (doc.workload.domains[d].kind == DomainKind::gated_bank && da.cycles != 0)
        fail(ac, "gated_bank domains carry no cycle counts");
      if (da.active_ppm == 0 && (da.cycles != 0 || da.dyn_fj != 0))
        fail(ac, "active_ppm 0 requires zero cycles and dyn_fj");
      any_work = any_work || da.cycles > 0;
      lp.activity.push_back(da);
    }
    if (!any_work) fail(lc, "layer needs cycles on at least one dvfs domain");
    if (auto it = l.find("idle_windows"); it != l.end()) {
      if (!it->is_array()) fail(lc + ".idle_windows", "must be an array");
      for (std::size_t k = 0; k < it->size(); ++k) {
        const std::string wc = lc + ".idle_windows[" + std::to_string(k) + "]";
        const Json& w = (*it)[k];
        check_keys(w, wc, {"domain_id", "start_ppm", "end_ppm"});
        IdleWindow iw;
        iw.domain_id = static_cast<i32>(
            need_int(w, "domain_id", wc, 0, static_cast<i64>(doc.workload.domains.size()) - 1));
        if (doc.workload.domains[iw.domain_id].kind != DomainKind::gated_bank)
          fail(wc, "idle windows apply to gated_bank domains only");
        iw.start_ppm = need_int(w, "start_ppm", wc, 0, kPpm);
        iw.end_ppm = need_int(w, "end_ppm", wc, 0, kPpm);
        if (iw.end_ppm <= iw.start_ppm) fail(wc, "end_ppm must exceed start_ppm");
        lp.idle_windows.push_back(iw);
      }
      // Sorted by (domain, start), non-overlapping within a domain, at most
      // 32 per domain (window masks are 32-bit).
      for (std::size_t k = 1; k < lp.idle_windows.size(); ++k) {
        const IdleWindow& a = lp.idle_windows[k - 1];
        const IdleWindow& b = lp.idle_windows[k];
        if (b.domain_id < a.domain_id ||
            (b.domain_id == a.domain_id && b.start_ppm < a.end_ppm))
          fail(lc + ".idle_windows", "windows must be sorted by (domain_id, start_ppm) and disjoint");
      }
      std::vector<int> per_domain(doc.workload.domains.size(), 0);
      for (const IdleWindow& w : lp.idle_windows)
        if (++per_domain[w.domain_id] > 32)
          fail(lc + ".idle_windows", "more than 32 windows for one domain");
    }
    doc.workload.layers.push_back(std::move(lp));
  }
  return doc;
}

ProfileDocument load_profile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open profile file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset to line/column for a usable message.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ValidationError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": JSON parse error: " + e.what());
  }
  try {
    return parse_profile(j);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

Json profile_to_json(const ProfileDocument& doc) {
  Json j;
  j["schema_version"] = doc.schema_version;
  j["name"] = doc.workload.name;
  j["v_nom_mv"] = doc.workload.v_nom_mv;
  j["menu"] = {{"v_min_mv", doc.menu.v_min_mv},
               {"v_max_mv", doc.menu.v_max_mv},
               {"v_step_mv", doc.menu.v_step_mv}};
  j["transition"] = {{"dvfs_switch_latency_ps", doc.transition.dvfs_switch_latency_ps},
                     {"default_wake_latency_ps", doc.transition.default_wake_latency_ps},
                     {"base_switch_energy_fj", doc.transition.base_switch_energy_fj},
                     {"swing_lo_mv", doc.transition.swing_lo_mv},
                     {"swing_hi_mv", doc.transition.swing_hi_mv}};
  j["idle_power_nw"] = doc.idle_power_nw;
  j["duty"] = {{"power_down_allowed", doc.duty.power_down_allowed},
               {"wake_energy_fj", doc.duty.wake_energy_fj},
               {"wake_latency_ps", doc.duty.wake_latency_ps}};
  j["domains"] = Json::array();
  for (const DomainSpec& d : doc.workload.domains) {
    Json dj;
    dj["id"] = d.id;
    dj["name"] = d.name;
    dj["kind"] = d.kind == DomainKind::dvfs ? "dvfs" : "gated_bank";
    dj["f_nom_khz"] = d.f_nom_khz;
    dj["cap_scale_ppm"] = d.cap_scale_ppm;
    dj["leak_nom_nw"] = d.leak_nom_nw;
    dj["wake_energy_fj"] = d.wake_energy_fj;
    dj["wake_latency_ps"] = d.wake_latency_ps;
    if (!d.vf_override.empty()) {
      dj["vf_override"] = Json::array();
      for (const VfPoint& p : d.vf_override)
        dj["vf_override"].push_back({{"v_mv", p.v_mv}, {"f_khz", p.f_khz}});
    }
    if (!d.leak_override.empty()) {
      dj["leak_override"] = Json::array();
      for (const VleakPoint& p : d.leak_override)
        dj["leak_override"].push_back({{"v_mv", p.v_mv}, {"leak_nw", p.leak_nw}});
    }
    j["domains"].push_back(std::move(dj));
  }
  j["layers"] = Json::array();
  for (const LayerProfile& l : doc.workload.layers) {
    Json lj;
    lj["layer_id"] = l.layer_id;
    lj["op_kind"] = l.op_kind;
    lj["activity"] = Json::array();
    for (const DomainActivity& a : l.activity)
      lj["activity"].push_back(
          {{"cycles", a.cycles}, {"dyn_fj", a.dyn_fj}, {"active_ppm", a.active_ppm}});
    lj["idle_windows"] = Json::array();
    for (const IdleWindow& w : l.idle_windows)
      lj["idle_windows"].push_back(
          {{"domain_id", w.domain_id}, {"start_ppm", w.start_ppm}, {"end_ppm", w.end_ppm}});
    j["layers"].push_back(std::move(lj));
  }
  return j;
}

void save_profile(const ProfileDocument& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write profile file: " + path);
  out << profile_to_json(doc).dump(2) << "\n";
}

DeadlineSpec make_deadline(const ProfileDocument& doc, const Rational& rate_fps) {
  if (rate_fps.num <= 0) throw ValidationError("inference rate must be positive");
  DeadlineSpec dl;
  dl.t_max_ps = floor_div((i128)1'000'000'000'000LL * rate_fps.den, rate_fps.num);
  if (dl.t_max_ps < 1) throw ValidationError("inference rate too high: deadline below 1 ps");
  dl.idle_power_nw = doc.idle_power_nw;
  dl.duty = doc.duty;
  return dl;
}

Json emit_schedule_table(const ProfileDocument& doc, const DeadlineSpec& dl, const Schedule& s) {
  const ScheduleEval& ev = s.eval;
  Json j;
  j["schema_version"] = "powerflow-schedule-1";
  j["profile_name"] = doc.workload.name;
  j["rails_mv"] = s.rails.rails_mv;
  j["deadline"] = {{"t_max_ps", dl.t_max_ps},
                   {"idle_power_nw", dl.idle_power_nw},
                   {"duty",
                    {{"power_down_allowed", dl.duty.power_down_allowed},
                     {"wake_energy_fj", dl.duty.wake_energy_fj},
                     {"wake_latency_ps", dl.duty.wake_latency_ps}}}};
  j["layers"] = Json::array();
  for (std::size_t i = 0; i < s.assignment.size(); ++i) {
    const LayerRow& row = ev.rows[i];
    Json lj;
    lj["layer_id"] = static_cast<i64>(i);
    lj["assignment_mv"] = s.assignment[i].assignment_mv;  // 0 = gated all layer
    lj["gated_window_mask"] = s.assignment[i].gated_window_mask;
    lj["t_op_ps"] = row.t_op_ps;
    lj["e_op_fj"] = row.e_op_fj;
    lj["t_trans_ps"] = row.t_trans_ps;
    lj["e_trans_fj"] = row.e_trans_fj;
    lj["rail_switches"] = row.rail_switches;
    lj["wake_events"] = row.wake_events;
    j["layers"].push_back(std::move(lj));
  }
  j["idle"] = {{"z", ev.z}, {"slack_ps", ev.slack_ps}, {"e_idle_fj", ev.e_idle_fj}};
  j["totals"] = {{"t_infer_ps", ev.t_infer_ps},
                 {"e_tot_fj", ev.e_tot_fj},
                 {"e_op_fj", ev.e_op_fj},
                 {"e_trans_fj", ev.e_trans_fj},
                 {"e_idle_fj", ev.e_idle_fj},
                 {"e_dynamic_fj", ev.e_dynamic_fj},
                 {"e_static_fj", ev.e_static_fj},
                 {"rail_switches", ev.rail_switches},
                 {"wake_events", ev.wake_events},
                 {"feasible", ev.feasible}};
  return j;
}

ScheduleTable load_schedule_table(const Json& j) {
  const std::string ctx = "schedule";
  // "stats" is an optional diagnostic block (solver name, search counters);
  // it never participates in re-evaluation, so its shape is not checked.
  check_keys(j, ctx,
             {"schema_version", "profile_name", "rails_mv", "deadline", "layers", "idle", "totals",
              "stats"});
  if (need_str(j, "schema_version", ctx) != "powerflow-schedule-1")
    fail(ctx, "unrecognized schema_version");
  ScheduleTable st;
  const Json& rails = need(j, "rails_mv", ctx);
  if (!rails.is_array() || rails.empty()) fail(ctx, "rails_mv must be a non-empty array");
  std::vector<Millivolt> rv;
  for (const Json& r : rails) {
    if (!r.is_number_integer()) fail(ctx, "rails_mv entries must be integers");
    rv.push_back(r.get<Millivolt>());
  }
  st.rails = make_rail_set(std::move(rv));
  {
    const Json& d = need(j, "deadline", ctx);
    const std::string dc = ctx + ".deadline";
    check_keys(d, dc, {"t_max_ps", "idle_power_nw", "duty"});
    st.deadline.t_max_ps = need_int(d, "t_max_ps", dc, 1, kMaxPs);
    st.deadline.idle_power_nw = need_int(d, "idle_power_nw", dc, 0, kMaxNw);
    const Json& duty = need(d, "duty", dc);
    check_keys(duty, dc + ".duty", {"power_down_allowed", "wake_energy_fj", "wake_latency_ps"});
    st.deadline.duty.power_down_allowed = need_bool(duty, "power_down_allowed", dc + ".duty");
    st.deadline.duty.wake_energy_fj = need_int(duty, "wake_energy_fj", dc + ".duty", 0, kMaxFj);
    st.deadline.duty.wake_latency_ps = need_int(duty, "wake_latency_ps", dc + ".duty", 0, kMaxPs);
  }
  const Json& layers = need(j, "layers", ctx);
  if (!layers.is_array() || layers.empty()) fail(ctx, "layers must be a non-empty array");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const std::string lc = ctx + ".layers[" + std::to_string(i) + "]";
    const Json& l = layers[i];
    check_keys(l, lc,
               {"layer_id", "assignment_mv", "gated_window_mask", "t_op_ps", "e_op_fj",
                "t_trans_ps", "e_trans_fj", "rail_switches", "wake_events"});
    if (need_int(l, "layer_id", lc, 0, 1'000'000) != static_cast<i64>(i))
      fail(lc, "layer_id must equal array position");
    LayerAssignment la;
    const Json& av = need(l, "assignment_mv", lc);
    const Json& mv = need(l, "gated_window_mask", lc);
    if (!av.is_array() || !mv.is_array() || av.size() != mv.size() || av.empty())
      fail(lc, "assignment_mv and gated_window_mask must be equal-length non-empty arrays");
    for (const Json& v : av) {
      if (!v.is_number_integer()) fail(lc, "assignment_mv entries must be integers");
      la.assignment_mv.push_back(v.get<Millivolt>());
    }
    for (const Json& v : mv) {
      if (!v.is_number_integer() || v.get<i64>() < 0 || v.get<i64>() > 0xFFFFFFFFLL)
        fail(lc, "gated_window_mask entries must be 32-bit integers");
      la.gated_window_mask.push_back(static_cast<u32>(v.get<i64>()));
    }
    st.assignment.push_back(std::move(la));
  }
  {
    const Json& idle = need(j, "idle", ctx);
    check_keys(idle, ctx + ".idle", {"z", "slack_ps", "e_idle_fj"});
    need_int(idle, "z", ctx + ".idle", 0, 1);
    need_int(idle, "slack_ps", ctx + ".idle", INT64_MIN / 2, kMaxPs);
    need_int(idle, "e_idle_fj", ctx + ".idle", 0, kMaxFj);
  }
  {
    const Json& t = need(j, "totals", ctx);
    const std::string tc = ctx + ".totals";
    check_keys(t, tc,
               {"t_infer_ps", "e_tot_fj", "e_op_fj", "e_trans_fj", "e_idle_fj", "e_dynamic_fj",
                "e_static_fj", "rail_switches", "wake_events", "feasible"});
    st.t_infer_ps = need_int(t, "t_infer_ps", tc, 0, kMaxPs);
    st.e_tot_fj = need_int(t, "e_tot_fj", tc, 0, kMaxFj * 2);
    need_bool(t, "feasible", tc);
  }
  return st;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") != std::string::npos) {
      out += '"';
      for (char c : f) {
        if (c == '"') out += '"';
        out += c;
      }
      out += '"';
    } else {
      out += f;
    }
  }
  out += '\n';
  return out;
}

}  // namespace powerflow
