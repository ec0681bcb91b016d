#include "cachenet/relax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cachenet {

using Eigen::VectorXd;

namespace {

constexpr double kE = 2.718281828459045;

double default_step(const Instance& inst) {
  double mx = 0.0;
  for (const auto& rq : inst.requests) mx = std::max(mx, rq.demand);
  return 0.1 * mx;
}

// infinite marginals appear for alpha-fair utilities at zero admission
void clamp_finite(VectorXd& d) {
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (std::isinf(d[i])) d[i] = d[i] > 0 ? 1e100 : -1e100;
  }
}

}  // namespace

SubgradientResult subgradient_maximize(const SubgradientProblem& p, const Box& box,
                                       const VectorXd& x0, const SubgradientConfig& cfg,
                                       double step_scale) {
  VectorXd x = project_box(box, x0);
  SubgradientResult res;
  VectorXd slack, d;
  for (int k = 0; k < cfg.iterations; ++k) {
    res.iterations = k + 1;
    p.slacks(x, slack);
    int worst = -1;
    double mn = 0.0;
    for (Eigen::Index i = 0; i < slack.size(); ++i) {
      if (slack[i] < mn) {
        mn = slack[i];
        worst = static_cast<int>(i);
      }
    }
    if (worst < 0) {
      const double f = p.objective(x);
      if (!res.found_feasible || f > res.best_value) {
        res.found_feasible = true;
        res.best_value = f;
        res.best_x = x;
      }
      p.objective_supergrad(x, d);
    } else {
      p.slack_supergrad(x, worst, d);
    }
    clamp_finite(d);
    const double nd = d.norm();
    if (nd == 0.0) break;
    x = project_box(box, x + (step_scale / std::sqrt(k + 1.0)) * (d / nd));
  }
  res.last_x = x;
  return res;
}

SubgradientProblem envelope_problem(const Evaluator& ev, const UtilityProfile& prof,
                                    double threshold_scale) {
  const auto& layout = ev.layout();
  const auto demand = ev.instance().demands();
  const int nl = ev.n_links(), nr = layout.n_requests;

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
  p.slacks = [&ev, threshold_scale, nl](const VectorXd& x, VectorXd& out) {
    VectorXd gt;
    ev.gtilde(x, gt);
    out.resize(nl + ev.n_caches());
    for (int j = 0; j < nl; ++j) out[j] = gt[j] - threshold_scale * ev.thresholds()[j];
    if (ev.n_caches() > 0) {
      Evaluator::Work w;
      ev.prepare(w, x);
      VectorXd cc;
      ev.cache_slacks(w, cc);
      out.tail(ev.n_caches()) = cc;
    }
  };
  p.slack_supergrad = [&ev, nl](const VectorXd& x, int j, VectorXd& d) {
    if (j < nl) {
      ev.gtilde_supergradient(x, j, d);
    } else {
      d = ev.cache_constraint_gradient(j - nl);
    }
  };
  return p;
}

RelaxResult solve_relaxation(const Instance& inst, const UtilityProfile& prof,
                             const SubgradientConfig& cfg) {
  const Evaluator ev(inst);
  const auto& layout = ev.layout();
  const double scale = 1.0 / (1.0 - 1.0 / kE);
  const SubgradientProblem p = envelope_problem(ev, prof, scale);
  const Box box{ev.lower_bounds(), ev.upper_bounds()};
  // full admission start: exact when the scaled thresholds are slack, and
  // the violated-constraint steps buy the missing coverage otherwise
  const VectorXd x0 = layout.pack(Strategy::admitting_all(inst));
  const double step = cfg.step_scale > 0.0 ? cfg.step_scale : default_step(inst);

  const SubgradientResult sr = subgradient_maximize(p, box, x0, cfg, step);

  RelaxResult res;
  res.iterations = sr.iterations;
  res.relaxation_feasible = sr.found_feasible;
  if (sr.found_feasible) {
    res.strategy = layout.unpack(inst, sr.best_x);
    res.objective = sr.best_value;
  } else {
    res.strategy = Strategy::rejecting_all(inst);
    res.objective = p.objective(layout.pack(res.strategy));
  }
  return res;
}

RepairResult relaxation_repair(const Evaluator& ev, VectorXd& x, double tol) {
  const auto& layout = ev.layout();
  const auto demand = ev.instance().demands();
  const double scale = 1.0 / (1.0 - 1.0 / kE);
  const int nl = ev.n_links(), nr = layout.n_requests;

  const auto feasible_at = [&](double beta) {
    VectorXd xb = x;
    for (int n = 0; n < nr; ++n) {
      const int rv = layout.r_var(n);
      xb[rv] = x[rv] + beta * (demand[n] - x[rv]);
    }
    VectorXd gt;
    ev.gtilde(xb, gt);
    for (int j = 0; j < nl; ++j) {
      if (gt[j] < scale * ev.thresholds()[j]) return false;
    }
    if (ev.n_caches() > 0) {
      Evaluator::Work w;
      ev.prepare(w, xb);
      VectorXd cc;
      ev.cache_slacks(w, cc);
      if (cc.minCoeff() < 0.0) return false;
    }
    return true;
  };

  RepairResult res;
  if (feasible_at(0.0)) {
    res.beta = 0.0;
    res.feasible = true;
    return res;
  }
  if (!feasible_at(1.0)) return res;

  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (feasible_at(mid) ? hi : lo) = mid;
  }
  for (int n = 0; n < nr; ++n) {
    const int rv = layout.r_var(n);
    x[rv] = x[rv] + hi * (demand[n] - x[rv]);
  }
  res.beta = hi;
  res.feasible = true;
  return res;
}

TightenedCapacities tightened_capacities(const Instance& inst) {
  const Evaluator ev(inst);
  TightenedCapacities out;
  out.capacity = inst.link_capacity;
  for (int j = 0; j < ev.n_links(); ++j) {
    const int e = ev.link_edges()[j];
    const double t = ev.thresholds()[j];
    out.capacity[e] = inst.link_capacity[e] - t / (kE - 1.0);
    if (out.capacity[e] <= 0.0) out.all_positive = false;
  }
  if (out.all_positive) {
    Instance tightened = inst;
    tightened.link_capacity = out.capacity;
    out.instance = std::move(tightened);
  }
  return out;
}

double delta_guarantee(double delta) { return (kE - delta) / (kE - 1.0); }

double overload_ratio(const Evaluator& ev) {
  double mx = 0.0;
  for (int j = 0; j < ev.n_links(); ++j) {
    const double cap = ev.lam_sums()[j] - ev.thresholds()[j];
    mx = std::max(mx, ev.lam_sums()[j] / cap);
  }
  return mx;
}

UpperBoundResult upper_bound(const Instance& inst, const UtilityProfile& prof,
                             const SubgradientConfig& cfg, const std::optional<Strategy>& warm) {
  const Evaluator ev(inst);
  const auto& layout = ev.layout();
  const SubgradientProblem p = envelope_problem(ev, prof, 1.0);
  const Box box{ev.lower_bounds(), ev.upper_bounds()};
  const VectorXd x0 = layout.pack(warm ? *warm : Strategy::admitting_all(inst));
  const double step = cfg.step_scale > 0.0 ? cfg.step_scale : default_step(inst);

  const SubgradientResult sr = subgradient_maximize(p, box, x0, cfg, step);

  UpperBoundResult res;
  res.iterations = sr.iterations;
  res.feasible = sr.found_feasible;
  if (sr.found_feasible) {
    res.value = sr.best_value;
    res.strategy = layout.unpack(inst, sr.best_x);
  } else {
    res.strategy = layout.unpack(inst, sr.last_x);
    res.value = p.objective(sr.last_x);
  }
  return res;
}

}  // namespace cachenet
