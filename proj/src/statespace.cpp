#include "powerflow/statespace.hpp"

#include <algorithm>

namespace powerflow {

GatingPlan plan_bank_gating(const WorkloadProfile& wp, const LayerProfile& layer,
                            std::size_t domain_index, Millivolt v_mv, Picosecond t_op_ps) {
  GatingPlan plan;
  const DomainSpec& d = wp.domains[domain_index];
  if (d.kind != DomainKind::gated_bank || t_op_ps <= 0) return plan;
  Nanowatt lk = leak_power(d, v_mv, wp.v_nom_mv);
  u32 wi = 0;
  for (const IdleWindow& w : layer.idle_windows) {
    if (w.domain_id != static_cast<i32>(domain_index)) continue;
    Picosecond dur = window_duration_ps(w, t_op_ps);
    // Strict break-even, compared at nW*ps resolution to dodge rounding.
    if (dur > d.wake_latency_ps && (i128)lk * dur > (i128)d.wake_energy_fj * kFinePerFj) {
      plan.mask |= (1u << wi);
      plan.saved_fj += half_up_div((i128)lk * dur, kFinePerFj) - d.wake_energy_fj;
      ++plan.wake_events;
    }
    ++wi;
  }
  return plan;
}

namespace {

std::vector<Millivolt> voltage_set_of(const std::vector<Millivolt>& assignment) {
  std::vector<Millivolt> vs;
  for (Millivolt v : assignment)
    if (v != 0) vs.push_back(v);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool domain_has_rail_choice(const DomainSpec& d, const DomainActivity& act) {
  return d.kind == DomainKind::dvfs && (act.cycles > 0 || act.dyn_fj > 0);
}

}  // namespace

LayerCandidates enumerate_states(const WorkloadProfile& wp, const LayerProfile& layer,
                                 const RailSet& rails) {
  const std::size_t nd = wp.domains.size();
  LayerCandidates out;
  out.layer_id = layer.layer_id;

  std::vector<std::size_t> choice_domains;  // dvfs domains with work
  std::vector<std::size_t> bank_domains;
  std::vector<Millivolt> base(nd, rails.min_rail());
  for (std::size_t di = 0; di < nd; ++di) {
    const DomainSpec& d = wp.domains[di];
    if (d.kind == DomainKind::gated_bank)
      bank_domains.push_back(di);
    else if (domain_has_rail_choice(d, layer.activity[di]))
      choice_domains.push_back(di);
  }

  // Per-bank option list is combo-dependent (the gating plan depends on
  // t_op), so banks are expanded inside the rail loop.
  std::vector<std::size_t> idx(choice_domains.size(), 0);
  const std::size_t n_rails = rails.size();
  while (true) {
    std::vector<Millivolt> assignment = base;
    for (std::size_t k = 0; k < choice_domains.size(); ++k)
      assignment[choice_domains[k]] = rails.rails_mv[idx[k]];

    // Latency is fixed by the dvfs choices; banks only shape energy.
    std::vector<u32> no_masks(nd, 0);
    Picosecond t_op = evaluate_state(wp, layer, assignment, no_masks).t_op_ps;

    // Options per bank: plain, plus the break-even window plan when it gates
    // anything. Gating happens only through profile-declared idle windows, so
    // every wake cost lands inside e_op where dominance can see it; states
    // never leave a bank gated across a layer boundary.
    struct BankOption {
      Millivolt v;
      u32 mask;
    };
    std::vector<std::vector<BankOption>> bank_opts;
    for (std::size_t di : bank_domains) {
      std::vector<BankOption> opts;
      const Millivolt vb = rails.min_rail();
      opts.push_back({vb, 0});
      GatingPlan plan = plan_bank_gating(wp, layer, di, vb, t_op);
      if (plan.mask != 0) opts.push_back({vb, plan.mask});
      bank_opts.push_back(std::move(opts));
    }

    std::vector<std::size_t> bidx(bank_domains.size(), 0);
    while (true) {
      std::vector<Millivolt> a = assignment;
      std::vector<u32> masks(nd, 0);
      for (std::size_t k = 0; k < bank_domains.size(); ++k) {
        a[bank_domains[k]] = bank_opts[k][bidx[k]].v;
        masks[bank_domains[k]] = bank_opts[k][bidx[k]].mask;
      }
      StateCost sc = evaluate_state(wp, layer, a, masks);
      PowerState st;
      st.assignment_mv = std::move(a);
      st.gated_window_mask = std::move(masks);
      st.t_op_ps = sc.t_op_ps;
      st.e_op_fj = sc.e_op_fj;
      st.leak_nw = sc.leak_nw;
      st.wake_events = sc.wake_events;
      st.voltage_set = voltage_set_of(st.assignment_mv);
      out.states.push_back(std::move(st));

      // advance bank odometer (last bank fastest)
      std::size_t k = bank_domains.size();
      while (k > 0) {
        --k;
        if (++bidx[k] < bank_opts[k].size()) break;
        bidx[k] = 0;
        if (k == 0) goto banks_done;
      }
      if (bank_domains.empty()) break;
    }
  banks_done:;

    // advance rail odometer (last choice domain fastest)
    std::size_t k = choice_domains.size();
    while (k > 0) {
      --k;
      if (++idx[k] < n_rails) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (choice_domains.empty()) return out;
  }
}

namespace {

bool dominates(const PowerState& b, const PowerState& a) {
  if (!(b.e_op_fj <= a.e_op_fj && b.t_op_ps <= a.t_op_ps && b.leak_nw <= a.leak_nw)) return false;
  if (b.e_op_fj == a.e_op_fj && b.t_op_ps == a.t_op_ps && b.leak_nw == a.leak_nw) return false;
  return std::includes(a.voltage_set.begin(), a.voltage_set.end(), b.voltage_set.begin(),
                       b.voltage_set.end());
}

}  // namespace

std::vector<PowerState> structure_prune(const std::vector<PowerState>& states) {
  std::vector<PowerState> out;
  out.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    bool pruned = false;
    for (std::size_t j = 0; j < states.size() && !pruned; ++j)
      if (j != i && dominates(states[j], states[i])) pruned = true;
    if (!pruned) out.push_back(states[i]);
  }
  return out;
}

BigInt schedule_space_bound(int menu_levels, int n_max, int domains, int layers) {
  if (menu_levels < 1 || n_max < 1 || domains < 1 || layers < 1)
    throw ValidationError("schedule_space_bound arguments must be positive");
  BigInt total = 0;
  const int kmax = std::min(n_max, menu_levels);
  for (int k = 1; k <= kmax; ++k) {
    BigInt choose = 1;
    for (int i = 0; i < k; ++i) {
      choose *= menu_levels - i;
      choose /= i + 1;
    }
    BigInt states_per_slot = k + 1;
    BigInt assignments = 1;
    long long slots = static_cast<long long>(domains) * layers;
    BigInt base = states_per_slot;
    while (slots > 0) {
      if (slots & 1) assignments *= base;
      base *= base;
      slots >>= 1;
    }
    total += choose * assignments;
  }
  return total;
}

LayeredStateGraph build_graph(const WorkloadProfile& wp, const TransitionModel& tm,
                              const RailSet& rails, bool prune) {
  LayeredStateGraph g;
  g.rails = rails;
  g.tm = tm;
  g.layers.reserve(wp.layers.size());
  for (const LayerProfile& layer : wp.layers) {
    LayerCandidates lc = enumerate_states(wp, layer, rails);
    if (prune) lc.states = structure_prune(lc.states);
    if (lc.states.empty()) throw ModelError("empty candidate set for layer");
    g.state_count += static_cast<i64>(lc.states.size());
    g.layers.push_back(std::move(lc));
  }
  for (std::size_t i = 0; i + 1 < g.layers.size(); ++i) {
    const auto& cur = g.layers[i].states;
    const auto& nxt = g.layers[i + 1].states;
    std::vector<TransitionCost> row(cur.size() * nxt.size());
    for (std::size_t a = 0; a < cur.size(); ++a)
      for (std::size_t b = 0; b < nxt.size(); ++b)
        row[a * nxt.size() + b] =
            transition_cost(wp, tm, cur[a].assignment_mv, nxt[b].assignment_mv);
    g.edge_count += static_cast<i64>(row.size());
    g.edges.push_back(std::move(row));
  }
  return g;
}

}  // namespace powerflow
