#pragma once

#include <Eigen/Core>
#include <functional>
#include <limits>

namespace cachenet {

struct Box {
  Eigen::VectorXd lo, hi;
};

Eigen::VectorXd project_box(const Box& box, const Eigen::VectorXd& x);

// x - proj(x + grad); vanishes exactly at box-stationary points of a
// maximization problem
Eigen::VectorXd pg_residual(const Box& box, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& grad);

// Smooth objective callbacks.  value_grad may return -inf to signal an
// out-of-domain point (grad output is then ignored); hvp must accept any
// in-domain point, not just the last one passed to value_grad.
struct SmoothOracle {
  std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)> value_grad;
  std::function<void(const Eigen::VectorXd& x, const Eigen::VectorXd& d, Eigen::VectorXd& out)> hvp;
};

// central-difference Hessian products for oracles without second derivatives
SmoothOracle with_fd_hvp(SmoothOracle oracle, double step = 1e-6);

struct TrustRegionConfig {
  double mu = 0.1;      // acceptance ratio
  double eta = 0.75;    // expansion ratio
  double gamma0 = 0.25; // shrink after an out-of-domain trial
  double gamma1 = 0.5;  // shrink after a rejected trial
  double gamma2 = 2.0;  // growth on strong steps
  double delta0 = 1.0;
  double min_delta = 1e-14;
  double target_residual = 1e-4;
  int max_iters = 5000;
};

struct TrustRegionResult {
  Eigen::VectorXd x;
  double value = -std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  int iters = 0;
  int evals = 0;
  bool converged = false;  // residual target reached
};

// Maximizes the oracle over the box from x0.  Each step takes the first local
// maximizer of the quadratic model along the projected gradient path, then a
// conjugate-gradient polish over the coordinates still strictly inside, all
// truncated at the trust radius (Euclidean).  Accepted objective values are
// nondecreasing and every iterate lies in the box exactly.
TrustRegionResult trust_region_maximize(const SmoothOracle& oracle, const Box& box,
                                        const Eigen::VectorXd& x0,
                                        const TrustRegionConfig& cfg = {});

}  // namespace cachenet
