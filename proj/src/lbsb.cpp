#include "cachenet/lbsb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cachenet {

using Eigen::VectorXd;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double floored_pow(double base, double expo) { return std::pow(std::max(base, 1e-300), expo); }

}  // namespace

BarrierProblem::BarrierProblem(const Evaluator& ev, const UtilityProfile& prof)
    : ev_(&ev), prof_(&prof), demand_(ev.instance().demands()) {
  sigma_l_ = VectorXd::Zero(ev.n_links());
  sigma_c_ = VectorXd::Zero(ev.n_caches());
  shift_l_ = VectorXd::Zero(ev.n_links());
  shift_c_ = VectorXd::Zero(ev.n_caches());
}

void BarrierProblem::set_state(VectorXd sigma_link, VectorXd sigma_cache, VectorXd shift_link,
                               VectorXd shift_cache) {
  sigma_l_ = std::move(sigma_link);
  sigma_c_ = std::move(sigma_cache);
  shift_l_ = std::move(shift_link);
  shift_c_ = std::move(shift_cache);
}

void BarrierProblem::refresh(const VectorXd& x) const {
  if (work_valid_ && work_.x.size() == x.size() && (work_.x.array() == x.array()).all()) return;
  ev_->prepare(work_, x);
  ev_->link_slacks(work_, slack_l_);
  ev_->cache_slacks(work_, slack_c_);
  work_valid_ = true;
}

double BarrierProblem::value(const VectorXd& x, VectorXd* grad) const {
  refresh(x);
  const auto& layout = ev_->layout();
  const int nr = layout.n_requests;
  double f = total_utility(*prof_, demand_, x.tail(nr));
  if (!std::isfinite(f)) return -kInf;

  const int nl = ev_->n_links(), nc = ev_->n_caches();
  VectorXd wl(nl), wc(nc);
  for (int j = 0; j < nl; ++j) {
    const double wgt = sigma_l_[j] * shift_l_[j];
    wl[j] = 0.0;
    if (wgt > 0.0) {
      const double arg = slack_l_[j] + shift_l_[j];
      if (arg <= 0.0) return -kInf;
      f += wgt * std::log(arg);
      wl[j] = wgt / arg;
    }
  }
  for (int v = 0; v < nc; ++v) {
    const double wgt = sigma_c_[v] * shift_c_[v];
    wc[v] = 0.0;
    if (wgt > 0.0) {
      const double arg = slack_c_[v] + shift_c_[v];
      if (arg <= 0.0) return -kInf;
      f += wgt * std::log(arg);
      wc[v] = wgt / arg;
    }
  }
  if (grad) {
    grad->setZero(layout.size());
    VectorXd rg;
    total_utility_gradient(*prof_, demand_, x.tail(nr), rg);
    grad->tail(nr) = rg;
    ev_->add_weighted_gradient(work_, wl, wc, *grad);
  }
  return f;
}

void BarrierProblem::hvp(const VectorXd& x, const VectorXd& d, VectorXd& out) const {
  refresh(x);
  const auto& layout = ev_->layout();
  const int nr = layout.n_requests, nl = ev_->n_links(), nc = ev_->n_caches();
  out.setZero(layout.size());

  VectorXd diag;
  total_utility_hessian_diag(*prof_, demand_, x.tail(nr), diag);
  out.tail(nr).array() += diag.array() * d.tail(nr).array();

  VectorXd dl, dc;
  ev_->constraint_dots(work_, d, dl, dc);

  // each barrier term sigma s ln(c+s) contributes
  //   sigma_bar * hess(c)  -  sigma s/(c+s)^2 * grad(c) grad(c)^T
  VectorXd sbar(nl), rank1_l(nl), rank1_c(nc);
  for (int j = 0; j < nl; ++j) {
    const double wgt = sigma_l_[j] * shift_l_[j];
    const double arg = slack_l_[j] + shift_l_[j];
    sbar[j] = rank1_l[j] = 0.0;
    if (wgt > 0.0 && arg > 0.0) {
      sbar[j] = wgt / arg;
      rank1_l[j] = -(wgt / (arg * arg)) * dl[j];
    }
  }
  for (int v = 0; v < nc; ++v) {
    const double wgt = sigma_c_[v] * shift_c_[v];
    const double arg = slack_c_[v] + shift_c_[v];
    rank1_c[v] = 0.0;
    if (wgt > 0.0 && arg > 0.0) rank1_c[v] = -(wgt / (arg * arg)) * dc[v];
  }
  ev_->add_weighted_gradient(work_, rank1_l, rank1_c, out);
  ev_->add_weighted_hvp(work_, d, sbar, out);
}

SmoothOracle BarrierProblem::oracle() const {
  SmoothOracle o;
  o.value_grad = [this](const VectorXd& x, VectorXd& g) { return value(x, &g); };
  o.hvp = [this](const VectorXd& x, const VectorXd& d, VectorXd& out) { hvp(x, d, out); };
  return o;
}

bool BarrierProblem::in_domain(const VectorXd& x) const {
  return std::isfinite(value(x, nullptr));
}

void BarrierProblem::estimates(const VectorXd& x, VectorXd& link, VectorXd& cache) const {
  refresh(x);
  link = multiplier_estimates(sigma_l_, shift_l_, slack_l_);
  cache = multiplier_estimates(sigma_c_, shift_c_, slack_c_);
}

void BarrierProblem::slacks(const VectorXd& x, VectorXd& link, VectorXd& cache) const {
  refresh(x);
  link = slack_l_;
  cache = slack_c_;
}

VectorXd compute_shifts(double eps, const VectorXd& sigma, double alpha_sigma) {
  return eps * sigma.array().pow(alpha_sigma);
}

VectorXd multiplier_estimates(const VectorXd& sigma, const VectorXd& shift,
                              const VectorXd& slack) {
  VectorXd out(sigma.size());
  for (Eigen::Index j = 0; j < sigma.size(); ++j) {
    const double wgt = sigma[j] * shift[j];
    const double arg = slack[j] + shift[j];
    out[j] = (wgt > 0.0 && arg > 0.0) ? wgt / arg : 0.0;
  }
  return out;
}

KKTResiduals kkt_residuals(const Evaluator& ev, const UtilityProfile& prof, const VectorXd& x,
                           const VectorXd& sigma_link, const VectorXd& sigma_cache) {
  const auto& layout = ev.layout();
  const int nr = layout.n_requests;
  Evaluator::Work w;
  ev.prepare(w, x);
  VectorXd cl, cc;
  ev.link_slacks(w, cl);
  ev.cache_slacks(w, cc);

  VectorXd grad = VectorXd::Zero(layout.size());
  VectorXd rg;
  total_utility_gradient(prof, ev.instance().demands(), x.tail(nr), rg);
  grad.tail(nr) = rg;
  ev.add_weighted_gradient(w, sigma_link, sigma_cache, grad);

  Box box{ev.lower_bounds(), ev.upper_bounds()};
  KKTResiduals res;
  res.stationarity = pg_residual(box, x, grad).norm();
  double comp = 0.0, mn = kInf;
  for (Eigen::Index j = 0; j < cl.size(); ++j) {
    comp += (cl[j] * sigma_link[j]) * (cl[j] * sigma_link[j]);
    mn = std::min(mn, sigma_link[j]);
  }
  for (Eigen::Index v = 0; v < cc.size(); ++v) {
    comp += (cc[v] * sigma_cache[v]) * (cc[v] * sigma_cache[v]);
    mn = std::min(mn, sigma_cache[v]);
  }
  res.complementarity = std::sqrt(comp);
  res.min_multiplier = std::isfinite(mn) ? mn : 0.0;
  return res;
}

Certificate suboptimality_certificate(const Evaluator& ev, const UtilityProfile& prof,
                                      const VectorXd& sigma_link, double theta_floor) {
  Certificate cert;
  const auto& t = ev.thresholds();
  const auto& lam = ev.lam_sums();
  const auto& np = ev.paths_per_link();
  double weighted = 0.0;
  for (int j = 0; j < ev.n_links(); ++j) {
    const double excess = std::max(0.0, t[j]);
    if (excess == 0.0) continue;
    cert.multiplier_bound += sigma_link[j] * excess;
    weighted += np[j] * excess / (lam[j] - t[j]);
  }
  if (weighted > 0.0) {
    const double theta = prof.theta_bound(ev.instance().requests.size(), theta_floor);
    cert.capacity_bound = theta * weighted;
  }
  return cert;
}

void make_feasible(const Evaluator& ev, VectorXd& x, double pad) {
  const auto& layout = ev.layout();
  const auto& inst = ev.instance();
  Evaluator::Work w;
  VectorXd cl, cc;

  for (int round = 0; round < 4; ++round) {
    ev.prepare(w, x);
    ev.cache_slacks(w, cc);
    for (int v = 0; v < ev.n_caches(); ++v) {
      if (cc[v] >= 0.0) continue;
      const int node = ev.cache_nodes()[v];
      const double cap = inst.free_slots(node);
      const double usage = cap - cc[v];
      const double factor =
          cap > 0.0 ? std::max(0.0, (cap - pad * (1.0 + cap)) / usage) : 0.0;
      for (int i = 0; i < layout.items; ++i) {
        const int id = layout.y_var[static_cast<std::size_t>(node) * layout.items + i];
        if (id >= 0) x[id] *= factor;
      }
    }

    for (int j = 0; j < ev.n_links(); ++j) {
      ev.prepare(w, x);
      ev.link_slacks(w, cl);
      if (cl[j] >= 0.0) continue;
      const double cap = ev.lam_sums()[j] - ev.thresholds()[j];
      const double load = cap - cl[j];
      const double beta = std::min(1.0, (-cl[j] + pad * (1.0 + std::abs(cap))) / load);
      const VectorXd gj = ev.link_constraint_gradient(w, j);
      for (int n = 0; n < layout.n_requests; ++n) {
        const int rv = layout.r_var(n);
        if (gj[rv] <= 0.0) continue;
        const double lam = inst.requests[n].demand;
        x[rv] = std::clamp(lam - (lam - x[rv]) * (1.0 - beta), 0.0, lam);
      }
    }

    ev.prepare(w, x);
    ev.link_slacks(w, cl);
    ev.cache_slacks(w, cc);
    const double worst = std::min(cl.size() ? cl.minCoeff() : 0.0, cc.size() ? cc.minCoeff() : 0.0);
    if (worst >= 0.0) break;
  }
}

LBSBResult solve_lbsb(const Instance& inst, const UtilityProfile& prof, const LBSBConfig& cfg,
                      const std::optional<Strategy>& start) {
  Evaluator ev(inst);
  const auto& layout = ev.layout();
  const int nl = ev.n_links(), nc = ev.n_caches(), nr = layout.n_requests;
  const std::vector<double> demand = inst.demands();
  Box box{ev.lower_bounds(), ev.upper_bounds()};
  BarrierProblem bp(ev, prof);

  const auto finite_utility = [&](const VectorXd& xx) {
    return std::isfinite(total_utility(prof, demand, xx.tail(nr)));
  };

  // full rejection with empty caches keeps every true slack at its largest;
  // utilities unbounded at zero rate need the rejections pulled inside
  VectorXd safe = layout.pack(Strategy::rejecting_all(inst));
  if (!finite_utility(safe)) {
    bool ok = false;
    for (const double f : {1e-3, 1e-2, 1e-1}) {
      VectorXd cand = safe;
      for (int n = 0; n < nr; ++n) cand[layout.r_var(n)] = demand[n] * (1.0 - f);
      if (finite_utility(cand)) {
        safe = cand;
        ok = true;
        break;
      }
    }
    if (!ok) throw std::runtime_error("utility profile admits no finite starting point");
  }

  VectorXd x = start ? project_box(box, layout.pack(*start)) : safe;
  if (!finite_utility(x)) x = safe;

  VectorXd sigma_l = VectorXd::Constant(nl, cfg.sigma0);
  VectorXd sigma_c = VectorXd::Constant(nc, cfg.sigma0);
  double eps = cfg.eps0;
  double omega = cfg.omega_s * std::pow(eps, cfg.alpha_omega);
  double delta = cfg.delta_s * std::pow(eps, cfg.alpha_delta);

  LBSBResult res;
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  VectorXd sbar_l, sbar_c, cl, cc;
  for (int k = 0; k < cfg.max_outer; ++k) {
    bp.set_state(sigma_l, sigma_c, compute_shifts(eps, sigma_l, cfg.alpha_sigma),
                 compute_shifts(eps, sigma_c, cfg.alpha_sigma));
    if (!bp.in_domain(x)) make_feasible(ev, x, 1e-9);
    if (!bp.in_domain(x)) {
      bool found = false;
      for (int m = 1; m <= 80 && !found; ++m) {
        VectorXd xm = safe + (x - safe) * std::ldexp(1.0, -m);
        if (bp.in_domain(xm)) {
          x = xm;
          found = true;
        }
      }
      if (!found) x = safe;
      if (!bp.in_domain(x)) break;
    }

    TrustRegionConfig tc = cfg.inner;
    tc.target_residual = omega;
    tc.max_iters = cfg.max_inner;
    const TrustRegionResult tr = trust_region_maximize(bp.oracle(), box, x, tc);
    x = tr.x;
    res.inner_iters += tr.iters;
    res.outer_iters = k + 1;

    bp.slacks(x, cl, cc);
    bp.estimates(x, sbar_l, sbar_c);

    double viol = 0.0;
    int sat = 0;
    for (int j = 0; j < nl; ++j) {
      viol = std::max(viol, -cl[j]);
      if (cl[j] >= -1e-9) ++sat;
    }
    for (int v = 0; v < nc; ++v) {
      viol = std::max(viol, -cc[v]);
      if (cc[v] >= -1e-9) ++sat;
    }
    const int ncons = nl + nc;
    res.trace.push_back({k, total_utility(prof, demand, x.tail(nr)), viol,
                         ncons ? static_cast<double>(sat) / ncons : 1.0, eps, omega, delta,
                         tr.iters, elapsed_ms()});

    double comp = 0.0, vtest = 0.0;
    for (int j = 0; j < nl; ++j) {
      const double prod = cl[j] * sbar_l[j];
      comp += prod * prod;
      const double scaled = sbar_l[j] == 0.0 ? 0.0 : prod / floored_pow(sigma_l[j], cfg.alpha_sigma);
      vtest += scaled * scaled;
    }
    for (int v = 0; v < nc; ++v) {
      const double prod = cc[v] * sbar_c[v];
      comp += prod * prod;
      const double scaled = sbar_c[v] == 0.0 ? 0.0 : prod / floored_pow(sigma_c[v], cfg.alpha_sigma);
      vtest += scaled * scaled;
    }
    comp = std::sqrt(comp);
    vtest = std::sqrt(vtest);

    if (tr.residual <= cfg.omega_star && comp <= cfg.delta_star &&
        viol <= cfg.feasibility_target) {
      sigma_l = sbar_l;
      sigma_c = sbar_c;
      res.converged = true;
      break;
    }
    if (vtest <= delta) {
      sigma_l = sbar_l;
      sigma_c = sbar_c;
      omega *= std::pow(eps, cfg.beta_omega);
      delta *= std::pow(eps, cfg.beta_delta);
    } else {
      eps *= cfg.tau;
      omega = cfg.omega_s * std::pow(eps, cfg.alpha_omega);
      delta = cfg.delta_s * std::pow(eps, cfg.alpha_delta);
    }
  }

  {
    Evaluator::Work w;
    ev.prepare(w, x);
    ev.link_slacks(w, cl);
    ev.cache_slacks(w, cc);
    const double worst =
        std::min(cl.size() ? cl.minCoeff() : 0.0, cc.size() ? cc.minCoeff() : 0.0);
    if (worst < 0.0) make_feasible(ev, x, 1e-9);
  }

  res.strategy = layout.unpack(inst, x);
  res.objective = total_utility(prof, demand, x.tail(nr));
  res.sigma_link = sigma_l;
  res.sigma_cache = sigma_c;
  res.kkt = kkt_residuals(ev, prof, x, sigma_l, sigma_c);
  res.feasibility = feasibility_report(inst, res.strategy);
  res.certificate = suboptimality_certificate(ev, prof, sigma_l);
  return res;
}

}  // namespace cachenet
