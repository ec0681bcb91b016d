#include "cachenet/boxsolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cachenet {

using Eigen::VectorXd;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

VectorXd project_box(const Box& box, const VectorXd& x) {
  return x.cwiseMax(box.lo).cwiseMin(box.hi);
}

VectorXd pg_residual(const Box& box, const VectorXd& x, const VectorXd& grad) {
  return x - project_box(box, x + grad);
}

SmoothOracle with_fd_hvp(SmoothOracle oracle, double step) {
  auto vg = oracle.value_grad;
  oracle.hvp = [vg, step](const VectorXd& x, const VectorXd& d, VectorXd& out) {
    VectorXd gp(x.size()), gm(x.size());
    vg(x + step * d, gp);
    vg(x - step * d, gm);
    out = (gp - gm) / (2.0 * step);
  };
  return oracle;
}

namespace {

// First local maximizer of the model along s(t) = proj(x + t g) - x, with
// ||s|| <= delta.  Returns the step and its model gain g.s + s.Hs/2.
struct CauchyStep {
  VectorXd s;
  VectorXd z;  // H s, maintained incrementally
  double gain = 0.0;
  int hvps = 0;
};

CauchyStep projected_cauchy_step(const SmoothOracle& oracle, const Box& box, const VectorXd& x,
                                 const VectorXd& g, double delta) {
  const int n = static_cast<int>(x.size());
  CauchyStep out;
  out.s = VectorXd::Zero(n);

  // breakpoint where each coordinate hits its bound
  std::vector<double> tb(n, kInf);
  VectorXd d = VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (g[i] > 0.0 && x[i] < box.hi[i]) {
      tb[i] = (box.hi[i] - x[i]) / g[i];
      d[i] = g[i];
    } else if (g[i] < 0.0 && x[i] > box.lo[i]) {
      tb[i] = (box.lo[i] - x[i]) / g[i];
      d[i] = g[i];
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return tb[a] < tb[b]; });

  out.z = VectorXd::Zero(n);
  VectorXd& z = out.z;
  VectorXd w(n);
  double t_cur = 0.0;
  std::size_t next = 0;
  while (next < order.size() && tb[order[next]] <= 0.0) ++next;

  while (true) {
    if (d.isZero(0.0)) break;  // path exhausted
    oracle.hvp(x, d, w);
    ++out.hvps;
    double q1 = g.dot(d) + z.dot(d);
    if (q1 <= 0.0) break;  // current point already a local max along the path
    double q2 = d.dot(w);

    double seg_end = kInf;
    if (next < order.size()) seg_end = tb[order[next]] - t_cur;

    // trust-radius cap along this segment
    double t_delta = kInf;
    double dd = d.squaredNorm();
    double sd = out.s.dot(d);
    double rad = out.s.squaredNorm() - delta * delta;
    double disc = sd * sd - dd * rad;
    if (disc >= 0.0) {
      t_delta = (-sd + std::sqrt(disc)) / dd;
      if (t_delta < 0.0) t_delta = 0.0;
    }

    double limit = std::min(seg_end, t_delta);
    double t_star = limit;
    bool stationary = false;
    if (q2 < 0.0) {
      double cand = -q1 / q2;
      if (cand < limit) {
        t_star = cand;
        stationary = true;
      }
    }
    if (!std::isfinite(t_star)) break;  // unbounded ascent along free coordinates

    out.s += t_star * d;
    z += t_star * w;
    out.gain += t_star * q1 + 0.5 * t_star * t_star * q2;
    if (stationary || t_star == t_delta) break;

    // advance past every breakpoint at this t and pin those coordinates
    t_cur += t_star;
    while (next < order.size() && tb[order[next]] <= t_cur) {
      int i = order[next];
      out.s[i] = g[i] > 0.0 ? box.hi[i] - x[i] : box.lo[i] - x[i];
      d[i] = 0.0;
      ++next;
    }
  }
  return out;
}

// Conjugate-gradient polish of the Cauchy point over the coordinates it left
// strictly inside the box, truncated at the radius or the first bound hit.
void subspace_refine(const SmoothOracle& oracle, const Box& box, const VectorXd& x,
                     const VectorXd& g, double delta, CauchyStep& step) {
  const int n = static_cast<int>(x.size());
  if (step.s.squaredNorm() >= delta * delta) return;
  VectorXd& z = step.z;
  std::vector<char> pinned(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    const double xi = x[i] + step.s[i];
    if (xi <= box.lo[i] || xi >= box.hi[i]) pinned[static_cast<std::size_t>(i)] = 1;
  }
  const auto mask = [&](VectorXd& v) {
    for (int i = 0; i < n; ++i)
      if (pinned[static_cast<std::size_t>(i)]) v[i] = 0.0;
  };

  VectorXd r = g + z;
  mask(r);
  double rr = r.squaredNorm();
  const double tol = std::max(1e-8 * rr, 1e-28);
  if (rr <= tol) return;

  VectorXd p = r, w(n);
  for (int it = 0; it < 50; ++it) {
    oracle.hvp(x, p, w);
    ++step.hvps;
    mask(w);
    const double pHp = p.dot(w);

    double amax = kInf;
    const double pp = p.squaredNorm();
    if (pp > 0.0) {
      const double sp = step.s.dot(p);
      const double disc = sp * sp - pp * (step.s.squaredNorm() - delta * delta);
      if (disc >= 0.0) amax = std::max(0.0, (-sp + std::sqrt(disc)) / pp);
    }
    for (int i = 0; i < n; ++i) {
      if (pinned[static_cast<std::size_t>(i)] || p[i] == 0.0) continue;
      const double xi = x[i] + step.s[i];
      const double cap = p[i] > 0.0 ? (box.hi[i] - xi) / p[i] : (box.lo[i] - xi) / p[i];
      amax = std::min(amax, std::max(0.0, cap));
    }

    double alpha;
    bool boundary = false;
    if (pHp < 0.0) {
      alpha = rr / -pHp;
      if (alpha >= amax) {
        alpha = amax;
        boundary = true;
      }
    } else {
      alpha = amax;
      boundary = true;
    }
    if (!std::isfinite(alpha) || alpha <= 0.0) break;

    step.s += alpha * p;
    z += alpha * w;
    step.gain += alpha * rr + 0.5 * alpha * alpha * pHp;
    if (boundary) break;

    r += alpha * w;
    mask(r);
    const double rr_next = r.squaredNorm();
    if (rr_next <= tol) break;
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
}

}  // namespace

TrustRegionResult trust_region_maximize(const SmoothOracle& oracle, const Box& box,
                                        const VectorXd& x0, const TrustRegionConfig& cfg) {
  if (box.lo.size() != x0.size() || box.hi.size() != x0.size())
    throw std::invalid_argument("trust_region_maximize: box/start size mismatch");
  TrustRegionResult res;
  res.x = project_box(box, x0);

  VectorXd g(x0.size());
  double f = oracle.value_grad(res.x, g);
  ++res.evals;
  if (!std::isfinite(f))
    throw std::invalid_argument("trust_region_maximize: start outside the oracle domain");
  res.value = f;

  double delta = cfg.delta0;
  for (res.iters = 0; res.iters < cfg.max_iters; ++res.iters) {
    res.residual = pg_residual(box, res.x, g).norm();
    if (res.residual <= cfg.target_residual) {
      res.converged = true;
      return res;
    }
    if (delta < cfg.min_delta) return res;

    CauchyStep step = projected_cauchy_step(oracle, box, res.x, g, delta);
    if (!(step.gain > 0.0)) return res;  // no model ascent along the path
    subspace_refine(oracle, box, res.x, g, delta, step);

    VectorXd xt = project_box(box, res.x + step.s);
    VectorXd gt(g.size());
    double ft = oracle.value_grad(xt, gt);
    ++res.evals;

    // below this gain the ratio test is dominated by rounding in ft - f;
    // keep polishing while strictly monotone, otherwise no certified progress
    double noise = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(res.value) + 1.0);
    if (step.gain <= noise) {
      if (!std::isfinite(ft) || ft < res.value || (xt.array() == res.x.array()).all()) return res;
      res.x = std::move(xt);
      res.value = ft;
      g = gt;
      continue;
    }

    double rho = std::isfinite(ft) ? (ft - res.value) / step.gain : -kInf;
    if (rho >= cfg.mu) {
      res.x = std::move(xt);
      res.value = ft;
      g = gt;
      if (rho >= cfg.eta) delta *= cfg.gamma2;
    } else {
      delta *= std::isfinite(ft) ? cfg.gamma1 : cfg.gamma0;
    }
  }
  res.residual = pg_residual(box, res.x, g).norm();
  res.converged = res.residual <= cfg.target_residual;
  return res;
}

}  // namespace cachenet
