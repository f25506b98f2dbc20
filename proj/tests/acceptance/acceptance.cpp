// Acceptance gate: ten numbered criteria over the solver stack, each ending
// in one [PASS]/[FAIL] verdict line that carries its pinned tolerances and
// the measured values. Runs standalone; exit code = number of failed
// criteria, so a red gate fails the suite without hiding which line broke.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "powerflow/railopt.hpp"
#include "powerflow/workload.hpp"

using namespace powerflow;

namespace {

int g_failed = 0;

std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void verdict(bool ok, const char* id, const std::string& text) {
  std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", id, text.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failed;
}

double now_s() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <class Fn>
void for_each_path(const LayeredStateGraph& g, Fn&& fn) {
  std::vector<i32> picks(g.layers.size(), 0);
  for (;;) {
    fn(picks);
    std::size_t i = 0;
    while (i < picks.size() && ++picks[i] == (i32)g.layers[i].states.size()) picks[i++] = 0;
    if (i == picks.size()) return;
  }
}

// Deadline between the fastest schedule and the unconstrained (lambda = 0)
// optimum's latency. num/den < 1 leaves a binding constraint.
DeadlineSpec blended_deadline(const ProfileDocument& doc, const LayeredStateGraph& g, i64 num,
                              i64 den) {
  DeadlineSpec dl = make_deadline(doc, Rational::integer(1));
  DeadlineSpec relaxed = dl;
  relaxed.t_max_ps = std::numeric_limits<i64>::max() / 4;
  const Schedule fastest = min_latency_schedule(g, doc.workload, relaxed);
  const Schedule slowest =
      dp_fixed_lambda(g, doc.workload, relaxed, Rational::integer(0)).schedule;
  dl.t_max_ps = fastest.eval.t_infer_ps +
                (slowest.eval.t_infer_ps - fastest.eval.t_infer_ps) * num / den;
  return dl;
}

const char* kProfiles[4] = {"squeezenet-like", "resnet18-like", "mobilenetv3-like",
                            "mobilevit-like"};

// ---------------------------------------------------------------------------
// C1: fixed-lambda DP equals exhaustive enumeration on 200 instances of
// <= 1e5 paths, for lambda in {0, 1, 1e3, 1e6} fJ/ps, under 60 s.

void criterion_1() {
  const double t0 = now_s();
  const Rational lambdas[4] = {Rational::integer(0), Rational::integer(1),
                               Rational::integer(1000), Rational::integer(1'000'000)};
  i64 total_paths = 0, max_paths = 0;
  int mismatches = 0;
  for (u64 seed = 1; seed <= 200; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.dvfs_domains = 2;
    cfg.trap_rate_ppm = 400'000;
    switch (seed % 4) {
      case 1: cfg.layers = 3; cfg.banks = 1; cfg.menu_levels = 3; break;
      case 2: cfg.layers = 4; cfg.banks = 0; cfg.menu_levels = 3; break;
      case 3: cfg.layers = 5; cfg.banks = 1; cfg.menu_levels = 2; break;
      default: cfg.layers = 4; cfg.banks = 1; cfg.menu_levels = 3; break;
    }
    ProfileDocument doc = generate_random_instance(cfg);
    RailSet rails = make_rail_set(doc.menu.levels());
    LayeredStateGraph g = build_graph(doc.workload, doc.transition, rails, false);
    auto count_paths = [&] {
      i64 p = 1;
      for (const auto& lc : g.layers) p *= (i64)lc.states.size();
      return p;
    };
    i64 paths = count_paths();
    if (paths > 100'000) {  // drop the bank so the instance stays enumerable
      cfg.banks = 0;
      doc = generate_random_instance(cfg);
      g = build_graph(doc.workload, doc.transition, rails, false);
      paths = count_paths();
    }
    total_paths += paths;
    max_paths = std::max(max_paths, paths);
    DeadlineSpec dl = make_deadline(doc, Rational::integer(1));
    dl.t_max_ps /= 2;  // bind the idle/duty terms for the larger lambdas
    Wide best[4];
    bool have = false;
    for_each_path(g, [&](const std::vector<i32>& p) {
      const Schedule s = make_schedule(g, doc.workload, dl, p);
      for (int k = 0; k < 4; ++k) {
        const Wide w = weighted_cost_of(s.eval, dl, lambdas[k]);
        if (!have || w < best[k]) best[k] = w;
      }
      have = true;
    });
    for (int k = 0; k < 4; ++k)
      if (dp_fixed_lambda(g, doc.workload, dl, lambdas[k]).weighted_cost != best[k])
        ++mismatches;
  }
  const double el = now_s() - t0;
  verdict(mismatches == 0 && max_paths <= 100'000 && el < 60.0, "C1",
          fmt("fixed-lambda DP exact on 200 instances x 4 lambdas (%lld paths total, max "
              "%lld <= 1e5); %d mismatches (tolerance 0); %.1f s (< 60 s)",
              (long long)total_paths, (long long)max_paths, mismatches, el));
}

// ---------------------------------------------------------------------------
// C2: lambda-search energy vs the exact oracle on 120 oracle-sized instances
// (6 layers, <= 18 states/layer) at tight deadlines: mean gap <= 1%, max
// <= 5%, under 5 min.

void criterion_2() {
  const double t0 = now_s();
  i64 worst_ppm = 0;
  i128 gap_sum_ppm = 0;
  int solved = 0;
  i64 max_states_per_layer = 0;
  for (u64 seed = 1; seed <= 120; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.layers = 6;
    cfg.dvfs_domains = 2;
    cfg.banks = 1;
    cfg.menu_levels = 3;
    cfg.trap_rate_ppm = 400'000;
    const ProfileDocument doc = generate_random_instance(cfg);
    const RailSet rails = make_rail_set(doc.menu.levels());
    const LayeredStateGraph gu = build_graph(doc.workload, doc.transition, rails, false);
    const LayeredStateGraph gp = build_graph(doc.workload, doc.transition, rails, true);
    for (const auto& lc : gu.layers)
      max_states_per_layer = std::max(max_states_per_layer, (i64)lc.states.size());
    const DeadlineSpec dl = blended_deadline(doc, gu, 2, 5);
    const SolveResult lam = solve_lambda_search(gp, doc.workload, dl);
    const SolveResult oracle = exact_oracle(gu, doc.workload, dl);
    const i64 gap = floor_div((i128)(lam.schedule.eval.e_tot_fj - oracle.schedule.eval.e_tot_fj) *
                                  kPpm,
                              std::max<i64>(1, oracle.schedule.eval.e_tot_fj));
    gap_sum_ppm += gap;
    worst_ppm = std::max(worst_ppm, gap);
    ++solved;
  }
  const double el = now_s() - t0;
  const i64 mean_ppm = (i64)(gap_sum_ppm / solved);
  verdict(solved >= 100 && mean_ppm <= 10'000 && worst_ppm <= 50'000 && el < 300.0, "C2",
          fmt("lambda-search vs exact oracle on %d instances (6 layers, <= %lld states/layer): "
              "mean gap %lld ppm (<= 10000), max %lld ppm (<= 50000); %.1f s (< 300 s)",
              solved, (long long)max_states_per_layer, (long long)mean_ppm,
              (long long)worst_ppm, el));
}

// ---------------------------------------------------------------------------
// C3: structure pruning never changes the exact oracle's optimal E_tot.
// Zero tolerance over the full random suite (the C2 family plus the C1
// shapes), each at a tight blended deadline.

void criterion_3() {
  const double t0 = now_s();
  int lossy = 0, instances = 0;
  auto check = [&](const ProfileDocument& doc) {
    const RailSet rails = make_rail_set(doc.menu.levels());
    const LayeredStateGraph gu = build_graph(doc.workload, doc.transition, rails, false);
    const LayeredStateGraph gp = build_graph(doc.workload, doc.transition, rails, true);
    const DeadlineSpec dl = blended_deadline(doc, gu, 2, 5);
    const SolveResult full = exact_oracle(gu, doc.workload, dl);
    const SolveResult pruned = exact_oracle(gp, doc.workload, dl);
    ++instances;
    if (full.schedule.eval.e_tot_fj != pruned.schedule.eval.e_tot_fj) ++lossy;
  };
  for (u64 seed = 1; seed <= 120; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.layers = 6;
    cfg.dvfs_domains = 2;
    cfg.banks = 1;
    cfg.menu_levels = 3;
    cfg.trap_rate_ppm = 400'000;
    check(generate_random_instance(cfg));
  }
  for (u64 seed = 1; seed <= 200; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.dvfs_domains = 2;
    cfg.trap_rate_ppm = 400'000;
    switch (seed % 4) {
      case 1: cfg.layers = 3; cfg.banks = 1; cfg.menu_levels = 3; break;
      case 2: cfg.layers = 4; cfg.banks = 0; cfg.menu_levels = 3; break;
      case 3: cfg.layers = 5; cfg.banks = 1; cfg.menu_levels = 2; break;
      default: cfg.layers = 4; cfg.banks = 1; cfg.menu_levels = 3; break;
    }
    check(generate_random_instance(cfg));
  }
  const double el = now_s() - t0;
  verdict(lossy == 0, "C3",
          fmt("pruning losslessness under the exact oracle: %d/%d instances lossy "
              "(tolerance 0); %.1f s",
              lossy, instances, el));
}

// ---------------------------------------------------------------------------
// C4: lambda-search with pruned layer candidates vs without, on the bundled
// full-size profiles at the production three-rail configuration, across a
// 1-100 FPS sweep. Every point >= 1.0x, median >= 1.2x.

void criterion_4() {
  const double t0 = now_s();
  const int rates[10] = {1, 5, 10, 20, 30, 40, 50, 60, 80, 100};
  std::vector<double> speedups;
  int energy_matches = 0, points = 0;
  for (const char* name : kProfiles) {
    const ProfileDocument doc = make_template_profile(name);
    const RailSet rails = evenly_spaced_rails(doc.menu.levels(), 3);
    const LayeredStateGraph gp = build_graph(doc.workload, doc.transition, rails, true);
    const LayeredStateGraph gu = build_graph(doc.workload, doc.transition, rails, false);
    for (int r : rates) {
      const DeadlineSpec dl = make_deadline(doc, Rational::integer(r));
      i64 tp = std::numeric_limits<i64>::max(), tu = tp;
      i64 ep = 0, eu = 0;
      try {
        for (int rep = 0; rep < 3; ++rep) {  // best of three against timer noise
          const SolveResult a = solve_lambda_search(gp, doc.workload, dl);
          const SolveResult b = solve_lambda_search(gu, doc.workload, dl);
          tp = std::min(tp, a.stats.solve_us);
          tu = std::min(tu, b.stats.solve_us);
          ep = a.schedule.eval.e_tot_fj;
          eu = b.schedule.eval.e_tot_fj;
        }
      } catch (const InfeasibleError&) {
        continue;  // rate beyond this profile's reach on three rails
      }
      ++points;
      if (ep == eu) ++energy_matches;
      speedups.push_back((double)tu / (double)std::max<i64>(tp, 1));
    }
  }
  std::sort(speedups.begin(), speedups.end());
  const double min_sp = speedups.empty() ? 0.0 : speedups.front();
  const double med_sp = speedups.empty() ? 0.0 : speedups[speedups.size() / 2];
  const double el = now_s() - t0;
  verdict(points >= 20 && min_sp >= 1.0 && med_sp >= 1.2, "C4",
          fmt("pruning speedup of lambda-search on bundled profiles, three-rail config, "
              "1-100 FPS: %d points, min %.1fx (>= 1.0), median %.1fx (>= 1.2); identical "
              "energies at %d/%d points; %.1f s",
              points, min_sp, med_sp, energy_matches, points, el));
}

// ---------------------------------------------------------------------------
// C5: policy ordering on every bundled profile. At the tightest common
// feasible rate of a fixed FPS grid: E(solver) < E(greedy+gating) <=
// E(gating) < E(nominal), solver saving vs nominal within 15-45%. At the
// loosest rate the greedy+gating gap collapses to <= 1%.

void criterion_5() {
  const double t0 = now_s();
  const int grid[9] = {1, 2, 5, 10, 15, 20, 30, 40, 80};
  const int expected_tightest[4] = {80, 80, 40, 40};
  bool all_ok = true;
  std::string detail;
  int sweep_viol = 0;
  for (int pi = 0; pi < 4; ++pi) {
    const ProfileDocument doc = make_template_profile(kProfiles[pi]);
    const i64 kInf = std::numeric_limits<i64>::max();
    i64 e_nom[9], e_gate[9], e_greedy[9], e_solver[9];
    for (int k = 0; k < 9; ++k) {
      const DeadlineSpec dl = make_deadline(doc, Rational::integer(grid[k]));
      auto energy_of = [&](auto&& f) -> i64 {
        try {
          return f(dl);
        } catch (const InfeasibleError&) {
          return kInf;
        }
      };
      e_nom[k] = energy_of([&](const DeadlineSpec& d) {
        return baseline_nominal(doc.workload, doc.transition, d).eval.e_tot_fj;
      });
      e_gate[k] = energy_of([&](const DeadlineSpec& d) {
        return baseline_gating(doc.workload, doc.transition, d).eval.e_tot_fj;
      });
      e_greedy[k] = energy_of([&](const DeadlineSpec& d) {
        return baseline_greedy_dvfs(doc.workload, doc.transition, d, doc.menu, true)
            .eval.e_tot_fj;
      });
      e_solver[k] = energy_of([&](const DeadlineSpec& d) {
        return optimize_rails(doc.workload, doc.transition, d, doc.menu.levels(), 3,
                              SolverKind::lambda, true)
            .result.schedule.eval.e_tot_fj;
      });
      if (e_solver[k] != kInf && e_greedy[k] != kInf && e_solver[k] > e_greedy[k])
        ++sweep_viol;
    }
    int tightest = -1;
    for (int k = 8; k >= 0; --k)
      if (e_nom[k] != kInf && e_gate[k] != kInf && e_greedy[k] != kInf && e_solver[k] != kInf) {
        tightest = k;
        break;
      }
    bool ok = tightest >= 0 && grid[tightest] == expected_tightest[pi];
    double save_pct = 0, loose_pct = 0;
    if (tightest >= 0) {
      const int k = tightest;
      ok = ok && e_solver[k] < e_greedy[k] && e_greedy[k] <= e_gate[k] &&
           e_gate[k] < e_nom[k];
      save_pct = 100.0 * (double)(e_nom[k] - e_solver[k]) / (double)e_nom[k];
      ok = ok && save_pct >= 15.0 && save_pct <= 45.0;
      loose_pct = 100.0 * (double)(e_greedy[0] - e_solver[0]) / (double)e_solver[0];
      ok = ok && e_solver[0] != kInf && e_greedy[0] != kInf && loose_pct >= 0.0 &&
           loose_pct <= 1.0;
    }
    all_ok = all_ok && ok;
    detail += fmt("%s%s @%d fps save %.1f%% loose-gap %.2f%%", pi ? "; " : "", kProfiles[pi],
                  tightest >= 0 ? grid[tightest] : -1, save_pct, loose_pct);
  }
  const double el = now_s() - t0;
  verdict(all_ok && sweep_viol == 0, "C5",
          fmt("ordering solver < greedy+gating <= gating < nominal at each profile's "
              "tightest grid rate, saving in 15-45%%, loosest-rate gap <= 1%%, solver <= "
              "greedy at all %d grid points (%d violations): %s; %.1f s",
              9 * 4, sweep_viol, detail.c_str(), el));
}

// ---------------------------------------------------------------------------
// C6: rail-count monotonicity and subset selection. Optimized E_tot is
// non-increasing in n_max and never above the evenly-spaced pick (zero
// tolerance, checked at two rates per profile); moving one -> three rails
// strictly reduces energy on every bundled profile.

void criterion_6() {
  const double t0 = now_s();
  const int tight_rate[4] = {80, 80, 40, 40};      // C5 tightest grid rates
  const int diverse_rate[4] = {100, 100, 60, 45};  // tightest rates nominal still meets
  bool mono_ok = true, evenly_ok = true, reduction_ok = true;
  std::string detail;
  for (int pi = 0; pi < 4; ++pi) {
    const ProfileDocument doc = make_template_profile(kProfiles[pi]);
    double red_pct = 0;
    for (int which = 0; which < 2; ++which) {
      const int rate = which == 0 ? tight_rate[pi] : diverse_rate[pi];
      const DeadlineSpec dl = make_deadline(doc, Rational::integer(rate));
      i64 opt[4], even[4];
      for (int n = 1; n <= 3; ++n) {
        opt[n] = optimize_rails(doc.workload, doc.transition, dl, doc.menu.levels(), n,
                                SolverKind::lambda, true)
                     .result.schedule.eval.e_tot_fj;
        const RailSet ev = evenly_spaced_rails(doc.menu.levels(), n);
        const LayeredStateGraph g = build_graph(doc.workload, doc.transition, ev, true);
        even[n] = solve_lambda_search(g, doc.workload, dl).schedule.eval.e_tot_fj;
      }
      mono_ok = mono_ok && opt[1] >= opt[2] && opt[2] >= opt[3];
      evenly_ok = evenly_ok && opt[1] <= even[1] && opt[2] <= even[2] && opt[3] <= even[3];
      if (which == 1) {
        reduction_ok = reduction_ok && opt[1] > opt[3];
        red_pct = 100.0 * (double)(opt[1] - opt[3]) / (double)opt[1];
      }
    }
    detail += fmt("%s%s 1->3 rails -%.1f%% @%d fps", pi ? "; " : "", kProfiles[pi], red_pct,
                  diverse_rate[pi]);
  }
  const double el = now_s() - t0;
  verdict(mono_ok && evenly_ok && reduction_ok, "C6",
          fmt("E_tot non-increasing in n_max %s, optimized <= evenly spaced %s (tolerance 0, "
              "2 rates x 4 profiles), 1->3-rail reduction positive on every profile: %s; "
              "%.1f s",
              mono_ok ? "holds" : "VIOLATED", evenly_ok ? "holds" : "VIOLATED",
              detail.c_str(), el));
}

// ---------------------------------------------------------------------------
// C7: transition-cost sensitivity under the exact oracle. 50 small instances
// whose dvfs domains run in alternating three-layer bursts (the idle pin
// forces rail swings at tight deadlines); base switch energy swept 0.1 nJ ->
// 1 uJ. Switch count at 1 uJ never above the 0.1 nJ count; E_trans share of
// E_tot non-decreasing along the sweep. Zero violations.

ProfileDocument c7_instance(u64 seed) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.layers = 6;
  cfg.dvfs_domains = 2;
  cfg.banks = 1;
  cfg.menu_levels = 3;
  ProfileDocument doc = generate_random_instance(cfg);
  std::mt19937_64 rng(seed * 31 + 7);
  auto draw = [&](i64 lo, i64 hi) { return lo + (i64)(rng() % (u64)(hi - lo + 1)); };
  for (int i = 0; i < cfg.layers; ++i) {
    LayerProfile& lp = doc.workload.layers[i];
    const int active = (i / 3) % 2;  // domain 0 runs layers 0-2, domain 1 runs 3-5
    const i64 t_base_ps = draw(200, 900) * 1'000'000;
    for (int d = 0; d < 2; ++d) {
      DomainActivity da;
      if (d == active) {
        da.cycles = std::max<i64>(
            1, (i64)((i128)t_base_ps * doc.workload.domains[d].f_nom_khz / 1'000'000'000));
        da.dyn_fj = std::max<i64>(1, (i64)((i128)t_base_ps * draw(250'000, 700'000) / kFinePerFj));
        da.active_ppm = kPpm;
      }
      lp.activity[d] = da;
    }
  }
  return parse_profile(profile_to_json(doc));  // keep the edit schema-honest
}

void criterion_7() {
  const double t0 = now_s();
  const i64 bases[5] = {100'000, 1'000'000, 10'000'000, 100'000'000, 1'000'000'000};
  int count_viol = 0, share_viol = 0, solved = 0;
  i64 sw_lo = 0, sw_hi = 0;
  double share_lo = 0, share_hi = 0;
  for (u64 seed = 301; seed <= 350; ++seed) {
    const ProfileDocument doc = c7_instance(seed);
    const RailSet rails = make_rail_set(doc.menu.levels());
    const LayeredStateGraph g0 = build_graph(doc.workload, doc.transition, rails, false);
    const DeadlineSpec dl = blended_deadline(doc, g0, 2, 5);
    i64 sw[5];
    double share[5];
    for (int k = 0; k < 5; ++k) {
      ProfileDocument swept = doc;
      swept.transition.base_switch_energy_fj = bases[k];
      const LayeredStateGraph g = build_graph(swept.workload, swept.transition, rails, false);
      const SolveResult r = exact_oracle(g, swept.workload, dl);
      sw[k] = r.schedule.eval.rail_switches;
      share[k] = (double)r.schedule.eval.e_trans_fj / (double)r.schedule.eval.e_tot_fj;
    }
    ++solved;
    if (sw[4] > sw[0]) ++count_viol;
    for (int k = 1; k < 5; ++k)
      if (share[k] < share[k - 1]) {
        ++share_viol;
        break;
      }
    sw_lo += sw[0];
    sw_hi += sw[4];
    share_lo += share[0];
    share_hi += share[4];
  }
  const double el = now_s() - t0;
  verdict(solved == 50 && count_viol == 0 && share_viol == 0, "C7",
          fmt("oracle under 0.1 nJ -> 1 uJ switch-energy sweep on 50 forced-switch "
              "instances: count violations %d, share violations %d (tolerance 0); mean "
              "switches %.2f -> %.2f, mean E_trans share %.2f%% -> %.1f%%; %.1f s",
              count_viol, share_viol, sw_lo / 50.0, sw_hi / 50.0, 100.0 * share_lo / 50,
              100.0 * share_hi / 50, el));
}

// ---------------------------------------------------------------------------
// C8: schedule-space size bound. Gate as stated: bound(menu 9, n_max 3,
// domains 5, layers 26) > 1e160. The computed bound is pinned exactly as a
// regression constant; at 26 layers it has 81 digits, so the 1e160 gate
// cannot be met by this formula (72 layers would clear it at 219 digits).

void criterion_8() {
  const char* kPinned =
      "15562456793495297046929920703897749572756991665348611953345623028987530923910"
      "1764";
  const BigInt bound = schedule_space_bound(9, 3, 5, 26);
  BigInt gate = 1;
  for (int i = 0; i < 160; ++i) gate *= 10;
  const std::string digits = bound.str();
  const bool pinned_ok = digits == kPinned;
  const bool exceeds = bound > gate;
  std::printf("  C8 computed bound(9, 3, 5, 26) = %s (%zu digits)%s\n", digits.c_str(),
              digits.size(), pinned_ok ? ", matches pinned regression value" : " [REGRESSION]");
  std::printf("  C8 note: the bound first clears 1e160 at 72 layers (%zu digits)\n",
              schedule_space_bound(9, 3, 5, 72).str().size());
  verdict(exceeds && pinned_ok, "C8",
          fmt("schedule_space_bound(9, 3, 5, 26) > 1e160: value has %zu digits, so the "
              "stated threshold is out of reach for 26 layers%s",
              digits.size(),
              pinned_ok ? " (computation verified against the pinned 81-digit constant)"
                        : "; AND the computed value drifted from the pinned constant"));
}

// ---------------------------------------------------------------------------
// C9: decomposition identities and reproducibility. Every emitted schedule
// satisfies E_tot = E_op + E_trans + E_idle = E_dyn + E_static, row sums
// reproduce the totals, the emitted table re-evaluates to identical
// E_tot/T_infer, and an independent re-solve emits byte-identical JSON.

void criterion_9() {
  const double t0 = now_s();
  int identity_viol = 0, reeval_viol = 0, byte_viol = 0;
  auto solve_and_emit = [&](const char* name, Schedule& out_sched, DeadlineSpec& out_dl) {
    const ProfileDocument doc = make_template_profile(name);
    out_dl = make_deadline(doc, Rational::integer(20));
    const RailOptResult res = optimize_rails(doc.workload, doc.transition, out_dl,
                                             doc.menu.levels(), 3, SolverKind::lambda, true);
    out_sched = res.result.schedule;
    return emit_schedule_table(doc, out_dl, res.result.schedule).dump(2);
  };
  for (const char* name : kProfiles) {
    Schedule sched;
    DeadlineSpec dl;
    const std::string first = solve_and_emit(name, sched, dl);
    const ScheduleEval& ev = sched.eval;
    i64 sum_op = 0, sum_trans = 0, sum_t = 0;
    for (const LayerRow& r : ev.rows) {
      sum_op += r.e_op_fj;
      sum_trans += r.e_trans_fj;
      sum_t += r.t_op_ps + r.t_trans_ps;
    }
    if (ev.e_tot_fj != ev.e_op_fj + ev.e_trans_fj + ev.e_idle_fj ||
        ev.e_tot_fj != ev.e_dynamic_fj + ev.e_static_fj || sum_op != ev.e_op_fj ||
        sum_trans != ev.e_trans_fj || sum_t != ev.t_infer_ps || !ev.feasible)
      ++identity_viol;
    const ProfileDocument doc = make_template_profile(name);
    const ScheduleTable table = load_schedule_table(Json::parse(first));
    const ScheduleEval again = evaluate_assignments(doc.workload, doc.transition,
                                                    table.deadline, table.assignment);
    if (again.e_tot_fj != table.e_tot_fj || again.t_infer_ps != table.t_infer_ps ||
        again.e_tot_fj != ev.e_tot_fj || again.t_infer_ps != ev.t_infer_ps)
      ++reeval_viol;
    Schedule sched2;
    DeadlineSpec dl2;
    if (solve_and_emit(name, sched2, dl2) != first) ++byte_viol;
  }
  const double el = now_s() - t0;
  verdict(identity_viol == 0 && reeval_viol == 0 && byte_viol == 0, "C9",
          fmt("decomposition identities, table re-evaluation, and byte-stable re-solves on "
              "4 bundled profiles @ 20 fps: %d identity, %d re-evaluation, %d byte "
              "violations (tolerance 0); %.1f s",
              identity_viol, reeval_viol, byte_viol, el));
}

// ---------------------------------------------------------------------------
// C10: scalability shape. Fixed-lambda DP wall time grows linearly in the
// edge work sum(|S_i| * |S_i+1|) (log-log slope 0.8-1.2 over >= 2 decades);
// the exact oracle's Pareto label count per state grows with depth on
// trap-dense instances (super-linear in graph size).

void criterion_10() {
  const double t0 = now_s();
  struct Pt {
    int layers, menu;
  };
  const Pt pts[9] = {{32, 5}, {64, 5}, {32, 7}, {64, 7}, {32, 9},
                     {64, 9}, {128, 9}, {256, 9}, {512, 9}};
  std::vector<double> lw, lt;
  for (const Pt& p : pts) {
    GenConfig cfg;
    cfg.seed = 77;
    cfg.layers = p.layers;
    cfg.dvfs_domains = 2;
    cfg.banks = 0;
    cfg.menu_levels = p.menu;
    const ProfileDocument doc = generate_random_instance(cfg);
    const RailSet rails = make_rail_set(doc.menu.levels());
    const LayeredStateGraph g = build_graph(doc.workload, doc.transition, rails, false);
    DeadlineSpec dl;
    dl.t_max_ps = std::numeric_limits<i64>::max() / 4;
    dl.idle_power_nw = doc.idle_power_nw;
    const Rational lam = Rational::integer(1);
    const double t1 = now_s();
    dp_fixed_lambda(g, doc.workload, dl, lam);
    const double est = std::max(now_s() - t1, 1e-6);
    const int reps = std::max(1, (int)(0.03 / est));
    double best = 1e100;
    for (int trial = 0; trial < 3; ++trial) {
      const double t2 = now_s();
      for (int rep = 0; rep < reps; ++rep) dp_fixed_lambda(g, doc.workload, dl, lam);
      best = std::min(best, (now_s() - t2) / reps);
    }
    lw.push_back(std::log((double)g.edge_count));
    lt.push_back(std::log(best));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = (int)lw.size();
  for (int i = 0; i < n; ++i) {
    sx += lw[i];
    sy += lt[i];
    sxx += lw[i] * lw[i];
    sxy += lw[i] * lt[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double decades = (lw.back() - lw.front()) / std::log(10.0);

  // Oracle side: per-state label load on trap-dense instances by depth.
  std::vector<double> ratio;
  std::vector<double> ls, ll;
  bool ratio_up = true;
  for (int L : {4, 8, 16, 32, 48}) {
    GenConfig cfg;
    cfg.seed = 55;
    cfg.layers = L;
    cfg.dvfs_domains = 2;
    cfg.banks = 0;
    cfg.menu_levels = 4;
    cfg.trap_rate_ppm = kPpm;
    const ProfileDocument doc = generate_random_instance(cfg);
    const RailSet rails = make_rail_set(doc.menu.levels());
    const LayeredStateGraph g = build_graph(doc.workload, doc.transition, rails, false);
    const DeadlineSpec dl = blended_deadline(doc, g, 2, 5);
    const SolveResult r = exact_oracle(g, doc.workload, dl);
    const double per_state = (double)r.stats.oracle_labels / (double)g.state_count;
    if (!ratio.empty() && per_state <= ratio.back()) ratio_up = false;
    ratio.push_back(per_state);
    ls.push_back(std::log((double)g.state_count));
    ll.push_back(std::log((double)r.stats.oracle_labels));
  }
  const double label_slope = (ll.back() - ll.front()) / (ls.back() - ls.front());
  const double el = now_s() - t0;
  verdict(slope >= 0.8 && slope <= 1.2 && decades >= 2.0 && ratio_up && label_slope > 1.5,
          "C10",
          fmt("fixed-lambda DP log-log slope %.2f in edge work (0.8-1.2 over %.1f decades); "
              "oracle labels/state on trap-dense instances rise %.0f -> %.0f with depth "
              "(labels-vs-states slope %.1f > 1.5); %.1f s",
              slope, decades, ratio.front(), ratio.back(), label_slope, el));
}

}  // namespace

int main() {
  const double t0 = now_s();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d/10 criteria passed (%.0f s total)\n", 10 - g_failed, now_s() - t0);
  return g_failed;
}
