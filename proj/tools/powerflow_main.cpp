// powerflow: energy-optimal power-state schedules for multi-domain edge
// accelerators. Subcommands cover single solves, the experiment sweeps, the
// marginal-utility ranking, solver cross-validation, and profile generation.
//
// Exit codes: 0 success, 2 infeasible, 3 input error, 4 oracle capacity.
// All stdout output is byte-stable for fixed inputs; wall times go to stderr.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "powerflow/workload.hpp"

namespace pf = powerflow;
using pf::i64;
using pf::Rational;

namespace {

constexpr const char* kVersion =
    "powerflow 1.0.0 (profile schema powerflow-profile-1, schedule schema powerflow-schedule-1)";

Rational parse_rate(const std::string& text) {
  Rational r;
  try {
    r = pf::parse_decimal_rational(text);
  } catch (const std::exception& e) {
    throw pf::ValidationError("bad rate \"" + text + "\": " + e.what());
  }
  if (r.num <= 0) throw pf::ValidationError("rate must be positive: \"" + text + "\"");
  return r;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// "900|1100|1300" -> rail set
pf::RailSet parse_rail_set(const std::string& s, const pf::VoltageMenu& menu) {
  std::vector<pf::Millivolt> rails;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    rails.push_back(static_cast<pf::Millivolt>(std::stol(cur)));
    cur.clear();
  };
  for (char c : s) {
    if (c == '|')
      flush();
    else if (c >= '0' && c <= '9')
      cur += c;
    else
      throw pf::ValidationError("bad rail set \"" + s + "\"");
  }
  flush();
  if (rails.empty()) throw pf::ValidationError("empty rail set");
  for (pf::Millivolt v : rails)
    if (!menu.contains(v))
      throw pf::ValidationError("rail " + std::to_string(v) + " mV is not a menu level");
  return pf::make_rail_set(std::move(rails));
}

i64 parse_energy_nj_to_fj(const std::string& text) {
  Rational r = pf::parse_decimal_rational(text);
  // nJ -> fJ is exactly 1e6; the parse keeps <= 12 decimal places, so this
  // stays integral for any sane input.
  pf::i128 fj = (pf::i128)r.num * 1'000'000;
  if (fj % r.den != 0)
    throw pf::ValidationError("transition energy \"" + text + "\" nJ is finer than 1 fJ");
  fj /= r.den;
  if (fj < 0 || fj > 4'000'000'000'000'000LL)
    throw pf::ValidationError("transition energy \"" + text + "\" nJ out of range");
  return static_cast<i64>(fj);
}

pf::SolverKind parse_solver(const std::string& s) {
  if (s == "lambda") return pf::SolverKind::lambda;
  if (s == "oracle") return pf::SolverKind::oracle;
  if (s == "jump") return pf::SolverKind::jump;
  throw pf::ValidationError("unknown solver \"" + s + "\" (lambda|oracle|jump)");
}

void write_out(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw pf::ValidationError("cannot write output file: " + path);
  f << content;
}

std::string fmt_fj(i64 fj) { return std::to_string(fj); }

// One policy evaluation for the rate sweep. Infeasible -> zeroed row.
struct PolicyRow {
  bool feasible = false;
  pf::ScheduleEval eval;
};

PolicyRow run_policy(const pf::ProfileDocument& doc, const pf::DeadlineSpec& dl,
                     const std::string& policy, int n_max) {
  PolicyRow row;
  try {
    pf::Schedule s;
    if (policy == "nominal") {
      s = pf::baseline_nominal(doc.workload, doc.transition, dl);
    } else if (policy == "gating") {
      s = pf::baseline_gating(doc.workload, doc.transition, dl);
    } else if (policy == "greedy") {
      s = pf::baseline_greedy_dvfs(doc.workload, doc.transition, dl, doc.menu, false);
    } else if (policy == "greedy+gating") {
      s = pf::baseline_greedy_dvfs(doc.workload, doc.transition, dl, doc.menu, true);
    } else if (policy == "powerflow") {
      s = pf::optimize_rails(doc.workload, doc.transition, dl, doc.menu.levels(), n_max)
              .result.schedule;
    } else {
      throw pf::ValidationError("unknown policy \"" + policy + "\"");
    }
    if (!s.feasible) return row;
    row.feasible = true;
    row.eval = s.eval;
  } catch (const pf::InfeasibleError&) {
    // leave zeroed
  }
  return row;
}

int cmd_solve(const std::string& profile_path, const std::string& rate_text, int n_max,
              const std::string& rail_set_text, const std::string& solver_text, bool no_prune,
              i64 oracle_cap, const std::string& out_path) {
  const pf::ProfileDocument doc = pf::load_profile(profile_path);
  const pf::DeadlineSpec dl = pf::make_deadline(doc, parse_rate(rate_text));
  const pf::SolverKind solver = parse_solver(solver_text);
  pf::OracleOptions ocfg;
  if (oracle_cap > 0) ocfg.label_cap = oracle_cap;

  const auto t0 = std::chrono::steady_clock::now();
  pf::SolveResult res;
  pf::RailSet rails;
  if (!rail_set_text.empty()) {
    rails = parse_rail_set(rail_set_text, doc.menu);
    pf::LayeredStateGraph g =
        pf::build_graph(doc.workload, doc.transition, rails, !no_prune);
    res = pf::run_solver(g, doc.workload, dl, solver, ocfg);
    res.stats.pruned = !no_prune;
  } else {
    pf::RailOptResult ro =
        pf::optimize_rails(doc.workload, doc.transition, dl, doc.menu.levels(), n_max, solver,
                           !no_prune);
    rails = ro.rails;
    res = std::move(ro.result);
  }
  const auto us =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0)
          .count();

  pf::Json j = pf::emit_schedule_table(doc, dl, res.schedule);
  j["stats"] = {{"solver", res.stats.solver},
                {"pruned", res.stats.pruned},
                {"dp_calls", res.stats.dp_calls},
                {"lambda_iterations", static_cast<i64>(res.stats.trace.size())},
                {"oracle_labels", res.stats.oracle_labels},
                {"state_count", res.stats.state_count},
                {"edge_count", res.stats.edge_count}};
  write_out(out_path, j.dump(2) + "\n");
  std::cerr << "solve wall time: " << us << " us\n";
  return 0;
}

int cmd_sweep_rate(const std::string& profile_path, const std::string& rates_text,
                   const std::string& policies_text, int n_max, const std::string& csv_path) {
  const pf::ProfileDocument doc = pf::load_profile(profile_path);
  const std::vector<std::string> rates = split_list(rates_text);
  if (rates.empty()) throw pf::ValidationError("no rates given");
  std::vector<std::string> policies = split_list(policies_text);
  if (policies.empty())
    policies = {"nominal", "gating", "greedy", "greedy+gating", "powerflow"};

  std::string csv = pf::csv_row({"rate_fps", "policy", "feasible", "t_infer_ps", "e_tot_fj",
                                 "e_op_fj", "e_trans_fj", "e_idle_fj", "e_dynamic_fj",
                                 "e_static_fj", "rail_switches", "wake_events"});
  for (const std::string& rate_text : rates) {
    const pf::DeadlineSpec dl = pf::make_deadline(doc, parse_rate(rate_text));
    for (const std::string& policy : policies) {
      const PolicyRow row = run_policy(doc, dl, policy, n_max);
      const pf::ScheduleEval& ev = row.eval;
      csv += pf::csv_row({rate_text, policy, row.feasible ? "1" : "0",
                          std::to_string(row.feasible ? ev.t_infer_ps : 0),
                          fmt_fj(row.feasible ? ev.e_tot_fj : 0),
                          fmt_fj(row.feasible ? ev.e_op_fj : 0),
                          fmt_fj(row.feasible ? ev.e_trans_fj : 0),
                          fmt_fj(row.feasible ? ev.e_idle_fj : 0),
                          fmt_fj(row.feasible ? ev.e_dynamic_fj : 0),
                          fmt_fj(row.feasible ? ev.e_static_fj : 0),
                          std::to_string(row.feasible ? ev.rail_switches : 0),
                          std::to_string(row.feasible ? ev.wake_events : 0)});
    }
  }
  write_out(csv_path, csv);
  return 0;
}

int cmd_sweep_rails(const std::string& profile_path, const std::string& rate_text, int max_rails,
                    const std::string& mode, const std::string& csv_path) {
  const pf::ProfileDocument doc = pf::load_profile(profile_path);
  const pf::DeadlineSpec dl = pf::make_deadline(doc, parse_rate(rate_text));
  if (mode != "evenly" && mode != "optimized" && mode != "both")
    throw pf::ValidationError("mode must be evenly|optimized|both");
  std::string csv =
      pf::csv_row({"n_rails", "mode", "feasible", "rails_mv", "t_infer_ps", "e_tot_fj"});
  for (int n = 1; n <= max_rails; ++n) {
    if (mode != "optimized") {
      const pf::RailSet rs = pf::evenly_spaced_rails(doc.menu.levels(), n);
      pf::LayeredStateGraph g = pf::build_graph(doc.workload, doc.transition, rs, true);
      std::string feas = "0", t = "0", e = "0";
      try {
        pf::SolveResult r = pf::solve_lambda_search(g, doc.workload, dl);
        feas = "1";
        t = std::to_string(r.schedule.eval.t_infer_ps);
        e = fmt_fj(r.schedule.eval.e_tot_fj);
      } catch (const pf::InfeasibleError&) {
      }
      csv += pf::csv_row({std::to_string(n), "evenly", feas, rs.to_string(), t, e});
    }
    if (mode != "evenly") {
      std::string feas = "0", t = "0", e = "0", rails = "";
      try {
        pf::RailOptResult ro =
            pf::optimize_rails(doc.workload, doc.transition, dl, doc.menu.levels(), n);
        feas = "1";
        rails = ro.rails.to_string();
        t = std::to_string(ro.result.schedule.eval.t_infer_ps);
        e = fmt_fj(ro.result.schedule.eval.e_tot_fj);
      } catch (const pf::InfeasibleError&) {
      }
      csv += pf::csv_row({std::to_string(n), "optimized", feas, rails, t, e});
    }
  }
  write_out(csv_path, csv);
  return 0;
}

int cmd_sweep_transition(const std::string& profile_path, const std::string& rate_text,
                         const std::string& energies_text, const std::string& rail_set_text,
                         const std::string& solver_text, const std::string& csv_path) {
  pf::ProfileDocument doc = pf::load_profile(profile_path);
  const pf::DeadlineSpec dl = pf::make_deadline(doc, parse_rate(rate_text));
  const pf::SolverKind solver = parse_solver(solver_text);
  std::vector<std::string> energies = split_list(energies_text);
  if (energies.empty()) energies = {"0.1", "1", "10", "100", "1000"};  // nJ, four decades
  const pf::RailSet rails = rail_set_text.empty()
                                ? pf::evenly_spaced_rails(doc.menu.levels(), 3)
                                : parse_rail_set(rail_set_text, doc.menu);
  std::string csv = pf::csv_row({"switch_energy_nj", "switch_energy_fj", "feasible", "e_tot_fj",
                                 "e_trans_fj", "e_trans_share_ppm", "rail_switches",
                                 "wake_events"});
  for (const std::string& etext : energies) {
    const i64 fj = parse_energy_nj_to_fj(etext);
    doc.transition.base_switch_energy_fj = fj;
    pf::LayeredStateGraph g = pf::build_graph(doc.workload, doc.transition, rails, true);
    std::string feas = "0", e = "0", et = "0", share = "0", sw = "0", wk = "0";
    try {
      pf::SolveResult r = pf::run_solver(g, doc.workload, dl, solver);
      const pf::ScheduleEval& ev = r.schedule.eval;
      feas = "1";
      e = fmt_fj(ev.e_tot_fj);
      et = fmt_fj(ev.e_trans_fj);
      share = std::to_string(
          ev.e_tot_fj > 0 ? pf::floor_div((pf::i128)ev.e_trans_fj * pf::kPpm, ev.e_tot_fj) : 0);
      sw = std::to_string(ev.rail_switches);
      wk = std::to_string(ev.wake_events);
    } catch (const pf::InfeasibleError&) {
    }
    csv += pf::csv_row({etext, std::to_string(fj), feas, e, et, share, sw, wk});
  }
  write_out(csv_path, csv);
  return 0;
}

int cmd_marginal_utility(const std::string& profile_path, const std::string& rate_text, int n_max,
                         const std::string& csv_path) {
  const pf::ProfileDocument doc = pf::load_profile(profile_path);
  const pf::DeadlineSpec dl = pf::make_deadline(doc, parse_rate(rate_text));
  const pf::Schedule nominal = pf::baseline_nominal(doc.workload, doc.transition, dl);
  const pf::RailOptResult ro =
      pf::optimize_rails(doc.workload, doc.transition, dl, doc.menu.levels(), n_max);
  const pf::Schedule& opt = ro.result.schedule;

  struct Row {
    std::size_t layer;
    i64 de_fj;  // energy saved vs nominal at this layer
    i64 dt_ps;  // latency added vs nominal
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < doc.workload.layers.size(); ++i) {
    rows.push_back({i, nominal.eval.rows[i].e_op_fj - opt.eval.rows[i].e_op_fj,
                    opt.eval.rows[i].t_op_ps - nominal.eval.rows[i].t_op_ps});
  }
  // Local marginal utility: energy saved per latency given up; dt <= 0 rows
  // (no latency cost) sort first by savings.
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    const bool fa = a.dt_ps <= 0, fb = b.dt_ps <= 0;
    if (fa != fb) return fa;
    if (fa) return a.de_fj > b.de_fj;
    const pf::i128 lhs = (pf::i128)a.de_fj * b.dt_ps;
    const pf::i128 rhs = (pf::i128)b.de_fj * a.dt_ps;
    if (lhs != rhs) return lhs > rhs;
    return a.layer < b.layer;
  });
  std::string csv = pf::csv_row({"rank", "layer_id", "op_kind", "utility_fj_per_ns",
                                 "e_op_nominal_fj", "e_op_powerflow_fj", "saved_fj", "dt_ps"});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Row& row = rows[r];
    //fJ per ns = 1000 * de / dt(ps); 3 decimal places, half-up
    const std::string util =
        row.dt_ps > 0 ? pf::format_rational_decimal(row.de_fj * 1000, row.dt_ps, 3) : "inf";
    csv += pf::csv_row({std::to_string(r + 1), std::to_string(row.layer),
                        doc.workload.layers[row.layer].op_kind, util, fmt_fj(nominal.eval.rows[row.layer].e_op_fj),
                        fmt_fj(opt.eval.rows[row.layer].e_op_fj), fmt_fj(row.de_fj),
                        std::to_string(row.dt_ps)});
  }
  write_out(csv_path, csv);
  return 0;
}

int cmd_validate(const std::string& seeds_text, int layers, int menu_levels,
                 const std::string& rate_text) {
  std::vector<std::string> seeds = split_list(seeds_text);
  if (seeds.empty()) seeds = {"1", "2", "3", "4", "5", "6", "7", "8"};
  i64 worst_gap_ppm = 0;
  pf::i128 gap_sum_ppm = 0;
  int solved = 0, lossless = 0;
  i64 lambda_us = 0, oracle_us = 0;
  for (const std::string& st : seeds) {
    pf::GenConfig cfg;
    cfg.seed = static_cast<pf::u64>(std::stoull(st));
    cfg.layers = layers;
    cfg.dvfs_domains = 2;
    cfg.banks = 1;
    cfg.menu_levels = menu_levels;
    cfg.trap_rate_ppm = 400'000;
    const pf::ProfileDocument doc = pf::generate_random_instance(cfg);

    // Tight deadline: 60% of the relaxed optimum's latency headroom.
    const pf::RailSet rails = pf::make_rail_set(doc.menu.levels());
    pf::LayeredStateGraph g = pf::build_graph(doc.workload, doc.transition, rails, true);
    pf::DeadlineSpec probe = pf::make_deadline(doc, parse_rate(rate_text));
    const pf::Schedule fastest = pf::min_latency_schedule(g, doc.workload, probe);
    const pf::Schedule slowest = pf::make_schedule(
        g, doc.workload, probe,
        pf::solve_lambda_search(
            g, doc.workload,
            pf::DeadlineSpec{.t_max_ps = std::numeric_limits<i64>::max() / 4,
                             .idle_power_nw = probe.idle_power_nw, .duty = probe.duty},
            {})
            .schedule.state_index);
    pf::DeadlineSpec dl = probe;
    dl.t_max_ps = fastest.eval.t_infer_ps +
                  (slowest.eval.t_infer_ps - fastest.eval.t_infer_ps) * 2 / 5;

    pf::LayeredStateGraph gu = pf::build_graph(doc.workload, doc.transition, rails, false);
    try {
      pf::SolveResult lam = pf::solve_lambda_search(g, doc.workload, dl);
      pf::SolveResult oru = pf::exact_oracle(gu, doc.workload, dl);
      pf::SolveResult orp = pf::exact_oracle(g, doc.workload, dl);
      lambda_us += lam.stats.solve_us;
      oracle_us += oru.stats.solve_us;
      ++solved;
      if (orp.schedule.eval.e_tot_fj == oru.schedule.eval.e_tot_fj) ++lossless;
      const i64 gap = pf::floor_div(
          (pf::i128)(lam.schedule.eval.e_tot_fj - oru.schedule.eval.e_tot_fj) * pf::kPpm,
          std::max<i64>(1, oru.schedule.eval.e_tot_fj));
      gap_sum_ppm += gap;
      worst_gap_ppm = std::max(worst_gap_ppm, gap);
      std::cout << "seed " << st << ": gap_ppm " << gap << ", prune "
                << (orp.schedule.eval.e_tot_fj == oru.schedule.eval.e_tot_fj ? "lossless"
                                                                             : "LOSSY")
                << "\n";
    } catch (const pf::CapacityError&) {
      std::cout << "seed " << st << ": oracle capacity exceeded, skipped\n";
    } catch (const pf::InfeasibleError&) {
      std::cout << "seed " << st << ": infeasible at chosen deadline, skipped\n";
    }
  }
  if (solved == 0) throw pf::ValidationError("validate: no instance solved");
  std::cout << "solved " << solved << "/" << seeds.size() << ", lossless " << lossless << "/"
            << solved << ", mean gap_ppm " << static_cast<i64>(gap_sum_ppm / solved)
            << ", max gap_ppm " << worst_gap_ppm << "\n";
  std::cerr << "lambda total " << lambda_us << " us, oracle total " << oracle_us << " us\n";
  return 0;
}

int cmd_gen(const std::string& template_name, const pf::GenConfig& cfg, bool have_seed,
            const std::string& out_path) {
  pf::ProfileDocument doc;
  if (!template_name.empty()) {
    if (have_seed)
      throw pf::ValidationError("--template and random-instance knobs are mutually exclusive");
    doc = pf::make_template_profile(template_name);
  } else {
    doc = pf::generate_random_instance(cfg);
  }
  write_out(out_path, pf::profile_to_json(doc).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"powerflow: deadline-feasible minimum-energy power-state schedules"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "print version and schema identifiers");

  std::string profile, rate = "30", rates, policies, rail_set, solver = "lambda", out, csv;
  std::string mode = "both", energies, template_name, seeds;
  int n_max = 3, max_rails = 4, val_layers = 6, val_menu = 3;
  bool no_prune = false;
  i64 oracle_cap = 0;

  CLI::App* solve = app.add_subcommand("solve", "solve one profile at one rate");
  solve->add_option("--profile", profile, "profile JSON path")->required();
  solve->add_option("--rate-fps", rate, "target inference rate (frames/s, decimal)");
  solve->add_option("--rails", n_max, "max rail count for rail optimization");
  solve->add_option("--rail-set", rail_set, "explicit rail set, e.g. 900|1100|1300");
  solve->add_option("--solver", solver, "lambda|oracle|jump");
  solve->add_flag("--no-prune", no_prune, "disable structure pruning");
  solve->add_option("--oracle-label-cap", oracle_cap, "override oracle label cap");
  solve->add_option("--out", out, "write schedule document here (default stdout)");

  CLI::App* swrate = app.add_subcommand("sweep-rate", "energy vs target rate per policy");
  swrate->add_option("--profile", profile, "profile JSON path")->required();
  swrate->add_option("--rates-fps", rates, "comma-separated rates")->required();
  swrate->add_option("--policies", policies,
                     "comma-separated: nominal,gating,greedy,greedy+gating,powerflow");
  swrate->add_option("--rails", n_max, "max rail count for the powerflow policy");
  swrate->add_option("--csv", csv, "write CSV here (default stdout)");

  CLI::App* swrails = app.add_subcommand("sweep-rails", "energy vs rail count");
  swrails->add_option("--profile", profile, "profile JSON path")->required();
  swrails->add_option("--rate-fps", rate, "target rate");
  swrails->add_option("--max-rails", max_rails, "sweep n = 1..max");
  swrails->add_option("--mode", mode, "evenly|optimized|both");
  swrails->add_option("--csv", csv, "write CSV here (default stdout)");

  CLI::App* swtrans = app.add_subcommand("sweep-transition", "energy vs switch energy");
  swtrans->add_option("--profile", profile, "profile JSON path")->required();
  swtrans->add_option("--rate-fps", rate, "target rate");
  swtrans->add_option("--energies-nj", energies, "comma-separated switch energies in nJ");
  swtrans->add_option("--rail-set", rail_set, "rail set (default evenly spaced 3)");
  swtrans->add_option("--solver", solver, "lambda|oracle|jump");
  swtrans->add_option("--csv", csv, "write CSV here (default stdout)");

  CLI::App* mu = app.add_subcommand("marginal-utility", "per-layer savings ranking");
  mu->add_option("--profile", profile, "profile JSON path")->required();
  mu->add_option("--rate-fps", rate, "target rate");
  mu->add_option("--rails", n_max, "max rail count");
  mu->add_option("--csv", csv, "write CSV here (default stdout)");

  CLI::App* val = app.add_subcommand("validate", "oracle-vs-lambda gaps and pruning check");
  val->add_option("--seeds", seeds, "comma-separated generator seeds");
  val->add_option("--layers", val_layers, "instance size");
  val->add_option("--menu-levels", val_menu, "menu levels for generated instances");
  val->add_option("--rate-fps", rate, "base rate used to derive idle power context");

  pf::GenConfig gcfg;
  bool have_seed = false;
  CLI::App* gen = app.add_subcommand("gen", "emit a template or random profile");
  gen->add_option("--template", template_name, "squeezenet-like|mobilenetv3-like|resnet18-like|mobilevit-like");
  gen->add_option("--seed", gcfg.seed, "random instance seed")->each([&](const std::string&) {
    have_seed = true;
  });
  gen->add_option("--layers", gcfg.layers, "layer count");
  gen->add_option("--dvfs-domains", gcfg.dvfs_domains, "dvfs domain count");
  gen->add_option("--banks", gcfg.banks, "gated bank count");
  gen->add_option("--menu-levels", gcfg.menu_levels, "menu size (2..9)");
  gen->add_option("--spread-ppm", gcfg.leak_dyn_spread_ppm, "leak/dyn contrast knob");
  gen->add_option("--trap-ppm", gcfg.trap_rate_ppm, "transition-trap rate");
  gen->add_option("--bank-idle-ppm", gcfg.bank_density_ppm, "bank idle-layer rate");
  gen->add_option("--switch-boost", gcfg.trap_switch_boost, "switch energy multiplier");
  gen->add_option("--name", gcfg.name, "profile name");
  gen->add_option("--out", out, "write profile here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;  // CLI misuse is an input error
  }

  try {
    if (version) {
      std::cout << kVersion << "\n";
      return 0;
    }
    if (solve->parsed())
      return cmd_solve(profile, rate, n_max, rail_set, solver, no_prune, oracle_cap, out);
    if (swrate->parsed()) return cmd_sweep_rate(profile, rates, policies, n_max, csv);
    if (swrails->parsed()) return cmd_sweep_rails(profile, rate, max_rails, mode, csv);
    if (swtrans->parsed())
      return cmd_sweep_transition(profile, rate, energies, rail_set, solver, csv);
    if (mu->parsed()) return cmd_marginal_utility(profile, rate, n_max, csv);
    if (val->parsed()) return cmd_validate(seeds, val_layers, val_menu, rate);
    if (gen->parsed()) return cmd_gen(template_name, gcfg, have_seed, out);
    std::cerr << app.help() << "\n";
    return 3;
  } catch (const pf::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const pf::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.min_t_infer_ps > 0)
      std::cerr << "hint: max feasible rate is about "
                << pf::format_rational_decimal(1'000'000'000'000LL, e.min_t_infer_ps, 2)
                << " fps\n";
    return 2;
  } catch (const pf::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const pf::ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
