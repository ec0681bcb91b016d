#include "cachenet/baselines.hpp"

#include "cachenet/lbsb.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cachenet {

using Eigen::VectorXd;

namespace {

double default_step(const Instance& inst) {
  double mx = 0.0;
  for (const auto& rq : inst.requests) mx = std::max(mx, rq.demand);
  return 0.1 * mx;
}

}  // namespace

RateOnlyResult solve_rate_only(const Instance& inst, const UtilityProfile& prof,
                               const Strategy& placement, const SubgradientConfig& cfg) {
  const Evaluator ev(inst);
  const auto& layout = ev.layout();
  const auto demand = inst.demands();
  const int nl = ev.n_links(), nr = layout.n_requests;

  Box box{ev.lower_bounds(), ev.upper_bounds()};
  VectorXd x0 = layout.pack(placement);
  for (int v = 0; v < layout.n_y; ++v) {
    const double yv = std::clamp(x0[v], 0.0, 1.0);
    box.lo[v] = box.hi[v] = yv;
    x0[v] = yv;
  }
  // start from full admission: in the loose regime it is already optimal,
  // and the switching steps walk it back to feasibility otherwise
  for (int n = 0; n < nr; ++n) x0[layout.r_var(n)] = 0.0;

  SubgradientProblem p;
  p.objective = [&prof, demand, nr](const VectorXd& x) {
    return total_utility(prof, demand, x.tail(nr));
  };
  p.objective_supergrad = [&prof, demand, nr](const VectorXd& x, VectorXd& d) {
    d.setZero(x.size());
    VectorXd rg;
    total_utility_gradient(prof, demand, x.tail(nr), rg);
    d.tail(nr) = rg;
  };
  // cache slacks are constant with y pinned, so only links enter the switching rule
  p.slacks = [&ev, nl](const VectorXd& x, VectorXd& out) {
    Evaluator::Work w;
    ev.prepare(w, x);
    VectorXd cl;
    ev.link_slacks(w, cl);
    out.resize(nl);
    out = cl;
  };
  p.slack_supergrad = [&ev](const VectorXd& x, int j, VectorXd& d) {
    Evaluator::Work w;
    ev.prepare(w, x);
    d = ev.link_constraint_gradient(w, j);
  };

  const double step = cfg.step_scale > 0.0 ? cfg.step_scale : default_step(inst);
  const SubgradientResult sr = subgradient_maximize(p, box, x0, cfg, step);

  RateOnlyResult res;
  res.iterations = sr.iterations;
  VectorXd xf = sr.found_feasible ? sr.best_x : sr.last_x;
  make_feasible(ev, xf, 1e-9);
  res.strategy = layout.unpack(inst, xf);
  res.objective = p.objective(xf);
  res.feasible = true;
  if (sr.found_feasible && sr.best_value > res.objective) {
    res.strategy = layout.unpack(inst, sr.best_x);
    res.objective = sr.best_value;
  }
  return res;
}

Strategy frank_wolfe_placement(const Instance& inst, const Strategy& base, int steps) {
  const Evaluator ev(inst);
  const auto& layout = ev.layout();
  const int nl = ev.n_links(), nc = ev.n_caches();

  VectorXd x = layout.pack(base);
  for (int v = 0; v < layout.n_y; ++v) x[v] = 0.0;

  Evaluator::Work w;
  const VectorXd wl = VectorXd::Ones(nl), wc = VectorXd::Zero(nc);
  std::vector<std::pair<double, int>> ranked;  // (-gradient, item)
  for (int s = 0; s < steps; ++s) {
    ev.prepare(w, x);
    VectorXd grad = VectorXd::Zero(layout.size());
    ev.add_weighted_gradient(w, wl, wc, grad);
    for (int node = 0; node < layout.nodes; ++node) {
      ranked.clear();
      for (int i = 0; i < layout.items; ++i) {
        const int id = layout.y_var[static_cast<std::size_t>(node) * layout.items + i];
        if (id >= 0 && grad[id] > 0.0) ranked.emplace_back(-grad[id], i);
      }
      std::sort(ranked.begin(), ranked.end());
      const int take = std::min<int>(inst.free_slots(node), static_cast<int>(ranked.size()));
      for (int t = 0; t < take; ++t) {
        const int id = layout.y_var[static_cast<std::size_t>(node) * layout.items + ranked[t].second];
        x[id] = std::min(1.0, x[id] + 1.0 / steps);
      }
    }
  }
  // the incremental updates accumulate rounding error, rescale any node
  // whose usage drifted past its capacity
  for (int node = 0; node < layout.nodes; ++node) {
    const double cap = inst.free_slots(node);
    double usage = 0.0;
    for (int i = 0; i < layout.items; ++i) {
      const int id = layout.y_var[static_cast<std::size_t>(node) * layout.items + i];
      if (id >= 0) usage += x[id];
    }
    if (usage > cap && usage > 0.0) {
      const double f = cap / usage;
      for (int i = 0; i < layout.items; ++i) {
        const int id = layout.y_var[static_cast<std::size_t>(node) * layout.items + i];
        if (id >= 0) x[id] *= f;
      }
    }
  }
  return layout.unpack(inst, x);
}

double total_served(const Instance& inst, const Strategy& s) {
  const Evaluator ev(inst);
  Evaluator::Work w;
  ev.prepare(w, ev.layout().pack(s));
  return ev.constraints(w).g_link.sum();
}

BaselineResult greedy_continuous(const Instance& inst, const UtilityProfile& prof,
                                 const SubgradientConfig& rate_cfg, int fw_steps) {
  const RateOnlyResult first = solve_rate_only(inst, prof, Strategy::rejecting_all(inst), rate_cfg);
  const Strategy placed = frank_wolfe_placement(inst, first.strategy, fw_steps);
  const RateOnlyResult second = solve_rate_only(inst, prof, placed, rate_cfg);
  return {second.strategy, second.objective, second.feasible, fw_steps};
}

BaselineResult greedy_integral(const Instance& inst, const UtilityProfile& prof,
                               const SubgradientConfig& rate_cfg) {
  const int nodes = inst.nodes(), items = inst.items();
  RateOnlyResult rate = solve_rate_only(inst, prof, Strategy::rejecting_all(inst), rate_cfg);
  Strategy cur = rate.strategy;
  std::vector<int> used(nodes, 0);

  int total_slots = 0;
  for (int v = 0; v < nodes; ++v) total_slots += inst.free_slots(v);

  int placed = 0;
  std::vector<double> gain(static_cast<std::size_t>(nodes) * items);
  for (; placed < total_slots; ++placed) {
    std::fill(gain.begin(), gain.end(), 0.0);
    for (std::size_t n = 0; n < inst.requests.size(); ++n) {
      const Request& rq = inst.requests[n];
      const double q = rq.demand - cur.r[n];
      if (q <= 0.0) continue;
      double prod = 1.0;
      for (std::size_t j = 0; j + 1 < rq.path.size(); ++j) {
        prod *= 1.0 - cur.y_at(inst, rq.path[j], rq.item);
        const double recovered = q * prod;
        if (recovered == 0.0) break;
        for (std::size_t m = 0; m <= j; ++m)
          gain[static_cast<std::size_t>(rq.path[m]) * items + rq.item] += recovered;
      }
    }

    int bv = -1, bi = -1;
    double best = 1e-12;
    for (int v = 0; v < nodes; ++v) {
      if (used[v] >= inst.free_slots(v)) continue;
      for (int i = 0; i < items; ++i) {
        if (inst.is_server(v, i) || cur.y_at(inst, v, i) != 0.0) continue;
        const double gv = gain[static_cast<std::size_t>(v) * items + i];
        if (gv > best) {
          best = gv;
          bv = v;
          bi = i;
        }
      }
    }
    if (bv < 0) break;
    cur.y_at(inst, bv, bi) = 1.0;
    ++used[bv];
    rate = solve_rate_only(inst, prof, cur, rate_cfg);
    cur = rate.strategy;
  }
  return {rate.strategy, rate.objective, rate.feasible, placed};
}

}  // namespace cachenet
