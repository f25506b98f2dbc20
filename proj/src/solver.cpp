#include "powerflow/solver.hpp"

#include <algorithm>
#include <chrono>

namespace powerflow {

namespace {

using Clock = std::chrono::steady_clock;

i64 us_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count();
}

// Backward cost-to-go DP over the layered DAG with a lexicographic (A, B)
// objective, both additive. Returns the optimal pick per layer; ties resolve
// toward the smaller state index at every step, which yields the
// lexicographically smallest optimal sequence on a forward read.
struct BackwardTables {
  std::vector<std::vector<Wide>> A;
  std::vector<std::vector<Wide>> B;
  std::vector<std::vector<i32>> next;
};

template <class NodeCost, class EdgeCost>
std::vector<i32> backward_dp(const LayeredStateGraph& g, NodeCost nc, EdgeCost ec) {
  const std::size_t L = g.layers.size();
  BackwardTables t;
  t.A.resize(L);
  t.B.resize(L);
  t.next.resize(L);
  for (std::size_t ii = L; ii-- > 0;) {
    const std::size_t n = g.layers[ii].states.size();
    t.A[ii].resize(n);
    t.B[ii].resize(n);
    t.next[ii].assign(n, -1);
    for (std::size_t j = 0; j < n; ++j) {
      auto [a0, b0] = nc(ii, j);
      if (ii + 1 == L) {
        t.A[ii][j] = a0;
        t.B[ii][j] = b0;
        continue;
      }
      const std::size_t m = g.layers[ii + 1].states.size();
      Wide bestA = 0, bestB = 0;
      i32 bestK = -1;
      for (std::size_t k = 0; k < m; ++k) {
        auto [ae, be] = ec(ii, j, k);
        Wide ca = ae + t.A[ii + 1][k];
        Wide cb = be + t.B[ii + 1][k];
        if (bestK < 0 || ca < bestA || (ca == bestA && cb < bestB)) {
          bestA = std::move(ca);
          bestB = std::move(cb);
          bestK = static_cast<i32>(k);
        }
      }
      t.A[ii][j] = a0 + bestA;
      t.B[ii][j] = b0 + bestB;
      t.next[ii][j] = bestK;
    }
  }
  // Forward read: smallest start index among optima, then follow stored picks.
  std::vector<i32> picks(L);
  i32 start = 0;
  for (std::size_t j = 1; j < g.layers[0].states.size(); ++j)
    if (t.A[0][j] < t.A[0][start] || (t.A[0][j] == t.A[0][start] && t.B[0][j] < t.B[0][start]))
      start = static_cast<i32>(j);
  picks[0] = start;
  for (std::size_t i = 1; i < L; ++i) picks[i] = t.next[i - 1][picks[i - 1]];
  return picks;
}

// Weighted DP pass for one duty mode. time_coeff multiplies path time (ps);
// energies enter at fine (nW*ps) resolution.
std::vector<i32> weighted_pass(const LayeredStateGraph& g, const Wide& q, const Wide& time_coeff) {
  const std::size_t L = g.layers.size();
  // Precompute contributions so the inner loop is add/compare only.
  std::vector<std::vector<Wide>> nodeA(L);
  for (std::size_t i = 0; i < L; ++i) {
    const auto& sts = g.layers[i].states;
    nodeA[i].resize(sts.size());
    for (std::size_t j = 0; j < sts.size(); ++j)
      nodeA[i][j] = q * (Wide(sts[j].e_op_fj) * kFinePerFj) + time_coeff * sts[j].t_op_ps;
  }
  std::vector<std::vector<Wide>> edgeA(g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    edgeA[i].resize(g.edges[i].size());
    for (std::size_t x = 0; x < g.edges[i].size(); ++x) {
      const TransitionCost& tc = g.edges[i][x];
      edgeA[i][x] = q * (Wide(tc.e_fj) * kFinePerFj) + time_coeff * tc.t_ps;
    }
  }
  return backward_dp(
      g,
      [&](std::size_t i, std::size_t j) {
        return std::pair<Wide, Wide>(nodeA[i][j], Wide(g.layers[i].states[j].t_op_ps));
      },
      [&](std::size_t i, std::size_t a, std::size_t b) {
        const std::size_t m = g.layers[i + 1].states.size();
        return std::pair<Wide, Wide>(edgeA[i][a * m + b], Wide(g.edges[i][a * m + b].t_ps));
      });
}

int cmp_picks(const std::vector<i32>& a, const std::vector<i32>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

// Ordering used for "best feasible seen": exact total energy, then latency,
// then lex state indices.
bool better_schedule(const Schedule& a, const Schedule& b) {
  if (a.eval.e_tot_fine != b.eval.e_tot_fine) return a.eval.e_tot_fine < b.eval.e_tot_fine;
  if (a.eval.t_infer_ps != b.eval.t_infer_ps) return a.eval.t_infer_ps < b.eval.t_infer_ps;
  return cmp_picks(a.state_index, b.state_index) < 0;
}

}  // namespace

Schedule make_schedule(const LayeredStateGraph& g, const WorkloadProfile& wp,
                       const DeadlineSpec& dl, const std::vector<i32>& picks) {
  Schedule s;
  s.state_index = picks;
  s.rails = g.rails;
  s.assignment.reserve(picks.size());
  for (std::size_t i = 0; i < picks.size(); ++i) {
    const PowerState& st = g.layers[i].states[picks[i]];
    s.assignment.push_back({st.assignment_mv, st.gated_window_mask});
  }
  s.eval = evaluate_assignments(wp, g.tm, dl, s.assignment);
  s.feasible = s.eval.feasible;
  return s;
}

namespace {

Wide wide_of(i128 v) {
  const bool neg = v < 0;
  if (neg) v = -v;
  Wide w = (Wide(static_cast<u64>(v >> 64)) << 64) + Wide(static_cast<u64>(v));
  return neg ? Wide(-w) : w;
}

}  // namespace

Wide weighted_cost_of(const ScheduleEval& ev, const DeadlineSpec& dl, const Rational& lambda) {
  // E_tot extended linearly past the deadline (z=1 idle term goes negative),
  // which keeps the weighted objective well-defined for infeasible paths.
  i128 e_fine = ev.e_tot_fine;
  if (!ev.feasible) e_fine += (i128)dl.idle_power_nw * (dl.t_max_ps - ev.t_infer_ps);
  return Wide(lambda.den) * wide_of(e_fine) + Wide(lambda.num) * kFinePerFj * ev.t_infer_ps;
}

DpOutcome dp_fixed_lambda(const LayeredStateGraph& g, const WorkloadProfile& wp,
                          const DeadlineSpec& dl, const Rational& lambda) {
  const Wide q = lambda.den;
  const Wide p = lambda.num;
  // z=1: E_idle = P_idle*(t_max - T) folds into the time coefficient.
  const Wide tc1 = p * kFinePerFj - q * dl.idle_power_nw;
  std::vector<std::vector<i32>> cands;
  cands.push_back(weighted_pass(g, q, tc1));
  if (dl.duty.power_down_allowed) {
    // z=0: flat duty cost, plain time weighting. The slack-fits condition is
    // enforced on the result, not inside the pass.
    cands.push_back(weighted_pass(g, q, p * kFinePerFj));
  }
  DpOutcome best;
  bool have = false;
  for (const auto& picks : cands) {
    Schedule s = make_schedule(g, wp, dl, picks);
    Wide w = weighted_cost_of(s.eval, dl, lambda);
    if (!have || w < best.weighted_cost ||
        (w == best.weighted_cost && better_schedule(s, best.schedule))) {
      best.schedule = std::move(s);
      best.weighted_cost = w;
      have = true;
    }
  }
  return best;
}

Schedule min_latency_schedule(const LayeredStateGraph& g, const WorkloadProfile& wp,
                              const DeadlineSpec& dl) {
  std::vector<i32> picks = backward_dp(
      g,
      [&](std::size_t i, std::size_t j) {
        const PowerState& st = g.layers[i].states[j];
        return std::pair<Wide, Wide>(Wide(st.t_op_ps), Wide(st.e_op_fj) * kFinePerFj);
      },
      [&](std::size_t i, std::size_t a, std::size_t b) {
        const std::size_t m = g.layers[i + 1].states.size();
        const TransitionCost& tc = g.edges[i][a * m + b];
        return std::pair<Wide, Wide>(Wide(tc.t_ps), Wide(tc.e_fj) * kFinePerFj);
      });
  return make_schedule(g, wp, dl, picks);
}

namespace {

struct SearchState {
  SolveStats stats;
  std::optional<Schedule> best;

  void consider(const Schedule& s) {
    if (!s.feasible) return;
    if (!best || better_schedule(s, *best)) best = s;
  }
};

Schedule run_lambda(const LayeredStateGraph& g, const WorkloadProfile& wp, const DeadlineSpec& dl,
                    const Rational& lambda, SearchState& ss) {
  DpOutcome out = dp_fixed_lambda(g, wp, dl, lambda);
  ++ss.stats.dp_calls;
  ss.stats.trace.push_back({lambda, out.schedule.feasible, out.schedule.eval.e_tot_fj,
                            out.schedule.eval.t_infer_ps});
  ss.consider(out.schedule);
  return std::move(out.schedule);
}

SolveResult finish(SearchState& ss, const LayeredStateGraph& g, Clock::time_point t0,
                   const char* name, i64 labels = 0) {
  ss.stats.solver = name;
  ss.stats.state_count = g.state_count;
  ss.stats.edge_count = g.edge_count;
  ss.stats.oracle_labels = labels;
  ss.stats.solve_us = us_since(t0);
  SolveResult r;
  r.schedule = std::move(*ss.best);
  r.stats = std::move(ss.stats);
  return r;
}

// Shared by the plain search and the jump-seeded variant: bracket [lo, hi]
// with dp(hi) known feasible, then binary-search lambda.
void refine_bracket(const LayeredStateGraph& g, const WorkloadProfile& wp, const DeadlineSpec& dl,
                    Rational lo, Rational hi, const LambdaSearchOptions& opt, SearchState& ss) {
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (Rational::width_below(lo, hi, opt.width_bits)) break;
    Rational mid;
    try {
      mid = Rational::midpoint(lo, hi);
    } catch (const std::overflow_error&) {
      break;  // denominator no longer representable; bracket is tight enough
    }
    if (mid == lo || mid == hi) break;
    Schedule s = run_lambda(g, wp, dl, mid, ss);
    if (s.feasible)
      hi = mid;
    else
      lo = mid;
  }
}

// Doubling sweep from `start` up to the cap; true once dp(hi) is feasible.
bool bracket_up(const LayeredStateGraph& g, const WorkloadProfile& wp, const DeadlineSpec& dl,
                i64 start, const LambdaSearchOptions& opt, SearchState& ss, Rational& lo,
                Rational& hi) {
  i64 lam = start;
  while (true) {
    hi = Rational(lam, 1);
    Schedule s = run_lambda(g, wp, dl, hi, ss);
    if (s.feasible) return true;
    lo = hi;
    if (lam >= opt.bracket_cap) return false;
    lam = lam > opt.bracket_cap / 2 ? opt.bracket_cap : lam * 2;
  }
}

}  // namespace

SolveResult solve_lambda_search(const LayeredStateGraph& g, const WorkloadProfile& wp,
                                const DeadlineSpec& dl, const LambdaSearchOptions& opt) {
  const auto t0 = Clock::now();
  SearchState ss;
  Schedule at0 = run_lambda(g, wp, dl, Rational(0, 1), ss);
  if (at0.feasible) return finish(ss, g, t0, "lambda");

  Schedule fastest = min_latency_schedule(g, wp, dl);
  if (!fastest.feasible)
    throw InfeasibleError("infeasible instance: minimum achievable latency " +
                              std::to_string(fastest.eval.t_infer_ps) + " ps exceeds deadline " +
                              std::to_string(dl.t_max_ps) + " ps",
                          fastest.eval.t_infer_ps);
  ss.consider(fastest);

  Rational lo(0, 1);
  Rational hi(1, 1);
  if (bracket_up(g, wp, dl, 1, opt, ss, lo, hi)) refine_bracket(g, wp, dl, lo, hi, opt, ss);
  return finish(ss, g, t0, "lambda");
}

SolveResult exact_oracle(const LayeredStateGraph& g, const WorkloadProfile& wp,
                         const DeadlineSpec& dl, const OracleOptions& opt) {
  const auto t0 = Clock::now();
  struct Label {
    i64 t;
    i64 e_fj;
    i32 prev_state;
    i32 prev_label;
  };
  const std::size_t L = g.layers.size();
  std::vector<std::vector<std::vector<Label>>> fronts(L);
  i64 total_labels = 0;

  // Dominance runs on the reduced cost c = e*1e6 - P_idle*t, not on raw
  // energy: the z=1 idle term credits path time at P_idle, so a slower label
  // can beat a faster, cheaper one at the terminal. c is additive along
  // paths and both terminal variants (idle at P_idle, or duty wake) are
  // monotone in (t, c), so this frontier is exact.
  const i64 pidle = dl.idle_power_nw;
  auto reduced = [pidle](const Label& lb) {
    return (i128)lb.e_fj * kFinePerFj - (i128)pidle * lb.t;
  };
  auto pareto_absorb = [&](std::vector<Label>& cand) {
    // Sort by (t, c, provenance) then sweep: strictly smaller c survives.
    std::stable_sort(cand.begin(), cand.end(), [&](const Label& x, const Label& y) {
      if (x.t != y.t) return x.t < y.t;
      const i128 cx = reduced(x), cy = reduced(y);
      if (cx != cy) return cx < cy;
      if (x.prev_state != y.prev_state) return x.prev_state < y.prev_state;
      return x.prev_label < y.prev_label;
    });
    std::vector<Label> out;
    bool have = false;
    i128 best_c = 0;
    for (const Label& lb : cand) {
      const i128 c = reduced(lb);
      if (!have || c < best_c) {
        out.push_back(lb);
        best_c = c;
        have = true;
      }
    }
    return out;
  };

  fronts[0].resize(g.layers[0].states.size());
  for (std::size_t j = 0; j < g.layers[0].states.size(); ++j) {
    const PowerState& st = g.layers[0].states[j];
    if (st.t_op_ps <= dl.t_max_ps) {
      fronts[0][j].push_back({st.t_op_ps, st.e_op_fj, -1, -1});
      ++total_labels;
    }
  }
  for (std::size_t i = 1; i < L; ++i) {
    const std::size_t m = g.layers[i].states.size();
    const std::size_t n = g.layers[i - 1].states.size();
    fronts[i].resize(m);
    bool any = false;
    for (std::size_t b = 0; b < m; ++b) {
      const PowerState& st = g.layers[i].states[b];
      std::vector<Label> cand;
      for (std::size_t a = 0; a < n; ++a) {
        if (fronts[i - 1][a].empty()) continue;
        const TransitionCost& e = g.edges[i - 1][a * m + b];
        const i64 dt = e.t_ps + st.t_op_ps;
        const i64 de = e.e_fj + st.e_op_fj;
        for (std::size_t li = 0; li < fronts[i - 1][a].size(); ++li) {
          const Label& pl = fronts[i - 1][a][li];
          i64 nt = pl.t + dt;
          if (nt > dl.t_max_ps) continue;  // can never recover: costs are non-negative
          i128 ne = (i128)pl.e_fj + de;
          if (ne > (i128)4'000'000'000'000'000'000LL)
            throw CapacityError("oracle capacity exceeded: energy accumulator range");
          cand.push_back({nt, static_cast<i64>(ne), static_cast<i32>(a), static_cast<i32>(li)});
        }
      }
      fronts[i][b] = pareto_absorb(cand);
      total_labels += static_cast<i64>(fronts[i][b].size());
      any = any || !fronts[i][b].empty();
      if (total_labels > opt.label_cap) throw CapacityError("oracle capacity exceeded");
    }
    if (!any) break;
  }

  // Terminal: idle term per label, duty decision exact per slack.
  bool found = false;
  i128 best_fine = 0;
  i64 best_t = 0;
  i32 best_state = -1, best_label = -1;
  for (std::size_t j = 0; j < g.layers[L - 1].states.size(); ++j) {
    for (std::size_t li = 0; li < fronts[L - 1][j].size(); ++li) {
      const Label& lb = fronts[L - 1][j][li];
      i128 fine = (i128)lb.e_fj * kFinePerFj + (i128)dl.idle_power_nw * (dl.t_max_ps - lb.t);
      if (power_down_fits(dl, lb.t)) {
        i128 fine0 = (i128)lb.e_fj * kFinePerFj + (i128)dl.duty.wake_energy_fj * kFinePerFj;
        if (fine0 < fine) fine = fine0;
      }
      if (!found || fine < best_fine || (fine == best_fine && lb.t < best_t)) {
        found = true;
        best_fine = fine;
        best_t = lb.t;
        best_state = static_cast<i32>(j);
        best_label = static_cast<i32>(li);
      }
    }
  }
  if (!found) {
    Schedule fastest = min_latency_schedule(g, wp, dl);
    throw InfeasibleError("infeasible instance: minimum achievable latency " +
                              std::to_string(fastest.eval.t_infer_ps) + " ps exceeds deadline " +
                              std::to_string(dl.t_max_ps) + " ps",
                          fastest.eval.t_infer_ps);
  }
  std::vector<i32> picks(L);
  i32 s = best_state, li = best_label;
  for (std::size_t i = L; i-- > 0;) {
    picks[i] = s;
    const Label& lb = fronts[i][s][li];
    s = lb.prev_state;
    li = lb.prev_label;
  }
  SearchState ss;
  Schedule sched = make_schedule(g, wp, dl, picks);
  ss.consider(sched);
  if (!ss.best) throw ModelError("oracle reconstruction produced infeasible schedule");
  return finish(ss, g, t0, "oracle", total_labels);
}

SolveResult marginal_utility_jump_search(const LayeredStateGraph& g, const WorkloadProfile& wp,
                                         const DeadlineSpec& dl, const LambdaSearchOptions& opt) {
  const auto t0 = Clock::now();
  SearchState ss;
  Schedule cur = run_lambda(g, wp, dl, Rational(0, 1), ss);
  if (cur.feasible) return finish(ss, g, t0, "jump");

  Schedule fastest = min_latency_schedule(g, wp, dl);
  if (!fastest.feasible)
    throw InfeasibleError("infeasible instance: minimum achievable latency " +
                              std::to_string(fastest.eval.t_infer_ps) + " ps exceeds deadline " +
                              std::to_string(dl.t_max_ps) + " ps",
                          fastest.eval.t_infer_ps);
  ss.consider(fastest);

  // Greedy feasibility repair. Delta of replacing layer i's state: own op
  // cost plus both touched transition edges (neighbors fixed).
  std::vector<i32> picks = cur.state_index;
  const std::size_t L = g.layers.size();
  auto delta_of = [&](std::size_t i, i32 cand) {
    const PowerState& was = g.layers[i].states[picks[i]];
    const PowerState& now = g.layers[i].states[cand];
    i64 dt = now.t_op_ps - was.t_op_ps;
    i64 de = now.e_op_fj - was.e_op_fj;
    if (i > 0) {
      const std::size_t m = g.layers[i].states.size();
      const TransitionCost& a = g.edges[i - 1][picks[i - 1] * m + picks[i]];
      const TransitionCost& b = g.edges[i - 1][picks[i - 1] * m + cand];
      dt += b.t_ps - a.t_ps;
      de += b.e_fj - a.e_fj;
    }
    if (i + 1 < L) {
      const std::size_t m = g.layers[i + 1].states.size();
      const TransitionCost& a = g.edges[i][picks[i] * m + picks[i + 1]];
      const TransitionCost& b = g.edges[i][cand * m + picks[i + 1]];
      dt += b.t_ps - a.t_ps;
      de += b.e_fj - a.e_fj;
    }
    return std::pair<i64, i64>(dt, de);
  };

  std::vector<Rational> jumps;
  i64 t_infer = cur.eval.t_infer_ps;
  const i64 step_cap = 64 * static_cast<i64>(g.state_count + L);
  for (i64 step = 0; t_infer > dl.t_max_ps && step < step_cap; ++step) {
    // Pass 1: strict improvements (save time at no energy cost) apply first.
    std::size_t bi = L;
    i32 bk = -1;
    i64 best_dt = 0;
    i64 best_de = 0;
    for (std::size_t i = 0; i < L; ++i)
      for (i32 k = 0; k < static_cast<i32>(g.layers[i].states.size()); ++k) {
        if (k == picks[i]) continue;
        auto [dt, de] = delta_of(i, k);
        if (dt >= 0 || de > 0) continue;
        if (bk < 0 || dt < best_dt || (dt == best_dt && de < best_de)) {
          bi = i;
          bk = k;
          best_dt = dt;
          best_de = de;
        }
      }
    if (bk < 0) {
      // Pass 2: paid upgrades, best time-saved-per-energy ratio.
      i128 bn = 0, bd = 1;  // best ratio -dt/de as fraction bn/bd
      for (std::size_t i = 0; i < L; ++i)
        for (i32 k = 0; k < static_cast<i32>(g.layers[i].states.size()); ++k) {
          if (k == picks[i]) continue;
          auto [dt, de] = delta_of(i, k);
          if (dt >= 0 || de <= 0) continue;
          if (bk < 0 || (i128)(-dt) * bd > bn * de) {
            bn = -dt;
            bd = de;
            bi = i;
            bk = k;
            best_dt = dt;
            best_de = de;
          }
        }
      if (bk < 0) break;  // stuck: no latency-reducing move remains
      jumps.push_back(Rational(best_de, -best_dt));
    }
    picks[bi] = bk;
    t_infer += best_dt;
  }
  cur = make_schedule(g, wp, dl, picks);
  ss.consider(cur);

  std::sort(jumps.begin(), jumps.end(), [](const Rational& a, const Rational& b) { return a < b; });
  jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());
  ss.stats.jump_points = jumps;

  // Seed the bracket from the recorded jump points, then refine as usual.
  Rational lo(0, 1);
  bool bracketed = false;
  Rational hi(1, 1);
  for (const Rational& jp : jumps) {
    if (jp.is_zero()) continue;
    Schedule s = run_lambda(g, wp, dl, jp, ss);
    if (s.feasible) {
      hi = jp;
      bracketed = true;
      break;
    }
    lo = jp;
  }
  if (!bracketed) {
    i64 start = 1;
    if (!jumps.empty()) {
      // first power of two above the largest (infeasible) jump point
      const Rational& top = jumps.back();
      i64 above = static_cast<i64>(top.num / top.den) + 1;
      while (start < above && start < opt.bracket_cap) start *= 2;
    }
    bracketed = bracket_up(g, wp, dl, start, opt, ss, lo, hi);
  }
  if (bracketed) refine_bracket(g, wp, dl, lo, hi, opt, ss);
  return finish(ss, g, t0, "jump");
}

}  // namespace powerflow
