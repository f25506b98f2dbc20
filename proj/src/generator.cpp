#include <random>

#include "powerflow/workload.hpp"

namespace powerflow {

namespace {

// Clamped linear widening: lo + span*spread_ppm/1e6, used to let one knob
// stretch the contrast ranges without floating point.
i64 widen(i64 lo, i64 span, i64 spread_ppm) {
  return lo + static_cast<i64>((i128)span * spread_ppm / kPpm);
}

}  // namespace

ProfileDocument generate_random_instance(const GenConfig& cfg) {
  if (cfg.layers < 1 || cfg.layers > 512) throw ValidationError("gen: layers out of range [1,512]");
  if (cfg.dvfs_domains < 1 || cfg.dvfs_domains > 8)
    throw ValidationError("gen: dvfs_domains out of range [1,8]");
  if (cfg.banks < 0 || cfg.banks > 8) throw ValidationError("gen: banks out of range [0,8]");
  if (cfg.menu_levels < 2 || cfg.menu_levels > 9)
    throw ValidationError("gen: menu_levels out of range [2,9]");
  if (cfg.leak_dyn_spread_ppm < 0 || cfg.trap_rate_ppm < 0 || cfg.trap_rate_ppm > kPpm ||
      cfg.bank_density_ppm < 0 || cfg.bank_density_ppm > kPpm || cfg.trap_switch_boost < 1 ||
      cfg.trap_switch_boost > 100'000)
    throw ValidationError("gen: knob out of range");

  std::mt19937_64 rng(cfg.seed);
  auto draw = [&](i64 lo, i64 hi) { return lo + static_cast<i64>(rng() % static_cast<u64>(hi - lo + 1)); };

  ProfileDocument doc;
  doc.menu.v_min_mv = 900;
  doc.menu.v_step_mv = 50;
  doc.menu.v_max_mv = 900 + 50 * (cfg.menu_levels - 1);
  doc.workload.v_nom_mv = doc.menu.v_max_mv;
  doc.workload.name = cfg.name.empty() ? "gen-" + std::to_string(cfg.seed) : cfg.name;
  doc.transition.base_switch_energy_fj = 1'000'000 * cfg.trap_switch_boost;
  doc.transition.swing_lo_mv = doc.menu.v_min_mv;
  doc.transition.swing_hi_mv = doc.menu.v_max_mv;
  doc.idle_power_nw = draw(100'000, 500'000);
  doc.duty = DutyConfig{};  // always-active idle by default

  const i64 spread = cfg.leak_dyn_spread_ppm;
  for (int d = 0; d < cfg.dvfs_domains; ++d) {
    DomainSpec ds;
    ds.id = d;
    ds.name = "dvfs" + std::to_string(d);
    ds.kind = DomainKind::dvfs;
    ds.f_nom_khz = draw(100, 800) * 1000;  // 100-800 MHz
    ds.cap_scale_ppm = kPpm;
    ds.leak_nom_nw = draw(20'000, widen(40'000, 120'000, spread));
    doc.workload.domains.push_back(std::move(ds));
  }
  for (int b = 0; b < cfg.banks; ++b) {
    DomainSpec ds;
    ds.id = cfg.dvfs_domains + b;
    ds.name = "bank" + std::to_string(b);
    ds.kind = DomainKind::gated_bank;
    ds.cap_scale_ppm = kPpm;
    ds.leak_nom_nw = draw(60'000, widen(100'000, 180'000, spread));
    ds.wake_energy_fj = draw(50'000, 400'000);
    ds.wake_latency_ps = doc.transition.default_wake_latency_ps;
    doc.workload.domains.push_back(std::move(ds));
  }

  static const char* kOps[] = {"conv", "dwconv", "fc", "pool", "attn"};
  for (int i = 0; i < cfg.layers; ++i) {
    LayerProfile lp;
    lp.layer_id = i;
    lp.op_kind = kOps[draw(0, 4)];
    const i64 t_base_ps = draw(200, 900) * 1'000'000;  // 0.2-0.9 ms at nominal
    int crit = static_cast<int>(draw(0, cfg.dvfs_domains - 1));
    if (draw(0, kPpm - 1) < cfg.trap_rate_ppm) crit = i % cfg.dvfs_domains;
    for (int d = 0; d < cfg.dvfs_domains; ++d) {
      DomainActivity da;
      const bool idle = d != crit && cfg.dvfs_domains > 1 && draw(0, kPpm - 1) < 100'000;
      if (idle) {
        lp.activity.push_back(da);  // zero row: pinned-idle coverage
        continue;
      }
      const i64 share_ppm = d == crit ? kPpm : draw(500'000, 900'000);
      const i64 t_d = static_cast<i64>((i128)t_base_ps * share_ppm / kPpm);
      da.cycles = std::max<i64>(1, static_cast<i64>((i128)t_d * doc.workload.domains[d].f_nom_khz /
                                                    1'000'000'000));
      // Dynamic power, not per-cycle energy: keeps layer dynamic energy large
      // against the fixed nJ-scale switch quantum regardless of clock rate,
      // mirroring real designs where rail-switch costs are noise next to a
      // layer's compute energy.
      const i64 p_dyn_nw = draw(250'000, widen(350'000, 700'000, spread));
      da.dyn_fj = std::max<i64>(1, static_cast<i64>((i128)t_d * p_dyn_nw / kFinePerFj));
      da.active_ppm = kPpm;
      lp.activity.push_back(da);
    }
    for (int b = 0; b < cfg.banks; ++b) {
      const i32 id = cfg.dvfs_domains + b;
      DomainActivity da;
      if (draw(0, kPpm - 1) < cfg.bank_density_ppm) {
        // Idle this layer: one or two disjoint gating windows.
        if (draw(0, 1) == 0) {
          const i64 s = draw(0, 400'000);
          lp.idle_windows.push_back({id, s, s + draw(100'000, kPpm - s - 1) + 1});
        } else {
          const i64 s1 = draw(0, 200'000);
          const i64 e1 = s1 + draw(50'000, 250'000);
          const i64 s2 = e1 + draw(20'000, 150'000);
          const i64 e2 = s2 + draw(50'000, 300'000);
          lp.idle_windows.push_back({id, s1, e1});
          lp.idle_windows.push_back({id, s2, e2});
        }
      } else {
        da.active_ppm = draw(400'000, kPpm);
        da.dyn_fj = draw(10'000, widen(100'000, 700'000, spread));
        if (kPpm - da.active_ppm >= 150'000)
          lp.idle_windows.push_back({id, da.active_ppm, kPpm});
      }
      lp.activity.push_back(da);
    }
    doc.workload.layers.push_back(std::move(lp));
  }
  // Canonicalize through the strict parser: the generator must never emit a
  // document load_profile would reject.
  return parse_profile(profile_to_json(doc));
}

namespace {

struct TypeRow {
  const char* op;
  i64 t_us[3];    // target time at nominal per dvfs domain (compute, feeder, rram)
  i64 epc_fj[3];  // per-cycle dynamic energy
  i64 abuf_act_ppm, abuf_dyn_fj;
  i64 wc_act_ppm, wc_dyn_fj;
};

constexpr TypeRow kStem{"conv", {500, 350, 100}, {400, 200, 1125}, 850'000, 15'000'000, 500'000, 3'750'000};
constexpr TypeRow kConv3{"conv", {450, 300, 90}, {375, 200, 1050}, 850'000, 13'000'000, 450'000, 3'500'000};
constexpr TypeRow kConv1{"conv1", {220, 260, 80}, {300, 235, 975}, 700'000, 6'500'000, 600'000, 3'250'000};
constexpr TypeRow kDw{"dwconv", {160, 430, 110}, {250, 300, 900}, 600'000, 4'500'000, 250'000, 1'500'000};
constexpr TypeRow kAttn{"attn", {230, 280, 430}, {225, 235, 825}, 500'000, 3'750'000, 800'000, 4'250'000};
constexpr TypeRow kFc{"fc", {120, 150, 300}, {200, 200, 750}, 200'000, 1'000'000, 700'000, 3'000'000};
constexpr TypeRow kPool{"pool", {140, 220, 60}, {150, 165, 675}, 400'000, 1'500'000, 0, 0};

ProfileDocument shared_platform(const std::string& name) {
  ProfileDocument doc;
  doc.workload.name = name;
  doc.workload.v_nom_mv = 1200;
  doc.menu = VoltageMenu{};  // 900..1300 step 50
  doc.transition = TransitionModel{};
  // Full-swing rail switch on these domains costs ~10 nJ (large decap charge),
  // big enough that layer-local policies pay for ignoring transitions;
  // the feeder and rram rails drive far smaller networks, so their share of
  // the switch charge is correspondingly smaller.
  doc.transition.base_switch_energy_fj = 10'000'000;
  doc.idle_power_nw = 300'000;
  doc.duty = DutyConfig{};

  auto dvfs = [&](const char* n, Kilohertz f, i64 cap_ppm, Nanowatt leak) {
    DomainSpec d;
    d.id = static_cast<i32>(doc.workload.domains.size());
    d.name = n;
    d.kind = DomainKind::dvfs;
    d.f_nom_khz = f;
    d.cap_scale_ppm = cap_ppm;
    d.leak_nom_nw = leak;
    doc.workload.domains.push_back(std::move(d));
  };
  auto bank = [&](const char* n, Nanowatt leak, Femtojoule wake_e) {
    DomainSpec d;
    d.id = static_cast<i32>(doc.workload.domains.size());
    d.name = n;
    d.kind = DomainKind::gated_bank;
    d.cap_scale_ppm = kPpm;
    d.leak_nom_nw = leak;
    d.wake_energy_fj = wake_e;
    d.wake_latency_ps = doc.transition.default_wake_latency_ps;
    doc.workload.domains.push_back(std::move(d));
  };
  dvfs("compute", 500'000, kPpm, 150'000);
  dvfs("feeder", 400'000, 500'000, 80'000);
  dvfs("rram", 100'000, 150'000, 50'000);
  bank("abuf", 140'000, 250'000);
  bank("wcache", 100'000, 180'000);
  return doc;
}

void push_layer(ProfileDocument& doc, const TypeRow& row) {
  static const Kilohertz kFnom[3] = {500'000, 400'000, 100'000};
  LayerProfile lp;
  lp.layer_id = static_cast<i32>(doc.workload.layers.size());
  lp.op_kind = row.op;
  for (int d = 0; d < 3; ++d) {
    DomainActivity da;
    da.cycles = row.t_us[d] * kFnom[d] / 1000;  // t_us * f_khz = 1e-3 cycles
    da.dyn_fj = da.cycles * row.epc_fj[d];
    da.active_ppm = kPpm;
    lp.activity.push_back(da);
  }
  const i64 acts[2] = {row.abuf_act_ppm, row.wc_act_ppm};
  const i64 dyns[2] = {row.abuf_dyn_fj, row.wc_dyn_fj};
  for (int b = 0; b < 2; ++b) {
    DomainActivity da;
    da.active_ppm = acts[b];
    da.dyn_fj = acts[b] > 0 ? dyns[b] : 0;
    lp.activity.push_back(da);
    if (kPpm - acts[b] >= 100'000)
      lp.idle_windows.push_back({3 + b, acts[b], kPpm});
  }
  std::stable_sort(lp.idle_windows.begin(), lp.idle_windows.end(),
                   [](const IdleWindow& a, const IdleWindow& b) {
                     return a.domain_id != b.domain_id ? a.domain_id < b.domain_id
                                                       : a.start_ppm < b.start_ppm;
                   });
  doc.workload.layers.push_back(std::move(lp));
}

}  // namespace

const std::vector<std::string>& template_names() {
  static const std::vector<std::string> names = {"squeezenet-like", "mobilenetv3-like",
                                                 "resnet18-like", "mobilevit-like"};
  return names;
}

ProfileDocument make_template_profile(const std::string& kind) {
  ProfileDocument doc = shared_platform(kind);
  if (kind == "squeezenet-like") {
    push_layer(doc, kStem);
    for (int i = 0; i < 8; ++i) {
      push_layer(doc, kConv1);
      push_layer(doc, kConv3);
      push_layer(doc, kConv3);
    }
    push_layer(doc, kPool);  // 26
  } else if (kind == "mobilenetv3-like") {
    push_layer(doc, kStem);
    for (int i = 0; i < 15; ++i) {
      push_layer(doc, kConv1);
      push_layer(doc, kDw);
      push_layer(doc, kConv1);
    }
    push_layer(doc, kPool);
    for (int i = 0; i < 4; ++i) push_layer(doc, kFc);
    push_layer(doc, kConv1);  // 52
  } else if (kind == "resnet18-like") {
    push_layer(doc, kStem);
    for (int i = 0; i < 8; ++i) {
      push_layer(doc, kConv3);
      push_layer(doc, kConv3);
    }
    push_layer(doc, kPool);
    push_layer(doc, kFc);
    push_layer(doc, kFc);  // 20
  } else if (kind == "mobilevit-like") {
    push_layer(doc, kStem);
    push_layer(doc, kConv3);
    for (int i = 0; i < 10; ++i) {
      push_layer(doc, kConv1);
      push_layer(doc, kDw);
      push_layer(doc, kConv1);
    }
    for (int i = 0; i < 7; ++i) {
      push_layer(doc, kConv1);
      push_layer(doc, kAttn);
      push_layer(doc, kAttn);
      push_layer(doc, kConv1);
    }  // 60
  } else {
    throw ValidationError("unknown template \"" + kind + "\"");
  }
  return parse_profile(profile_to_json(doc));
}

}  // namespace powerflow
