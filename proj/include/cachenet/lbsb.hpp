#pragma once

#include <optional>
#include <vector>

#include "cachenet/boxsolve.hpp"
#include "cachenet/model.hpp"
#include "cachenet/utility.hpp"

namespace cachenet {

// Outer-loop schedule of the shifted-barrier method.  Shift, forcing and
// multiplier-update exponents follow the usual first-order augmented
// Lagrangian calculus; alpha_sigma <= 1 and alpha_delta + 1/(1+alpha_sigma)
// should exceed 1 for local convergence of the multiplier iteration.
struct LBSBConfig {
  double eps0 = 0.1;
  double tau = 0.1;
  double alpha_omega = 1.0;
  double beta_omega = 1.0;
  double alpha_delta = 0.75;
  double beta_delta = 0.9;
  double alpha_sigma = 1.0;
  double omega_s = 1.0;
  double delta_s = 1.0;
  double omega_star = 1e-4;
  double delta_star = 1e-4;
  double sigma0 = 1.0;
  int max_outer = 200;
  int max_inner = 5000;
  // extra terminal requirement on the true constraint violation; a final
  // monotone repair enforces it when the stopping tests alone leave residue
  double feasibility_target = 1e-6;
  TrustRegionConfig inner;
};

// Barrier objective F(r) + sum_j sigma_j s_j ln(c_j + s_j) over the shifted
// slacks, with its exact first and second derivative oracles.
class BarrierProblem {
 public:
  BarrierProblem(const Evaluator& ev, const UtilityProfile& prof);

  void set_state(Eigen::VectorXd sigma_link, Eigen::VectorXd sigma_cache,
                 Eigen::VectorXd shift_link, Eigen::VectorXd shift_cache);

  double value(const Eigen::VectorXd& x, Eigen::VectorXd* grad) const;
  void hvp(const Eigen::VectorXd& x, const Eigen::VectorXd& d, Eigen::VectorXd& out) const;
  SmoothOracle oracle() const;

  bool in_domain(const Eigen::VectorXd& x) const;
  // sigma_bar = sigma s / (c + s) at x, the first-order multiplier estimates
  void estimates(const Eigen::VectorXd& x, Eigen::VectorXd& link, Eigen::VectorXd& cache) const;
  void slacks(const Eigen::VectorXd& x, Eigen::VectorXd& link, Eigen::VectorXd& cache) const;

 private:
  const Evaluator* ev_;
  const UtilityProfile* prof_;
  std::vector<double> demand_;
  Eigen::VectorXd sigma_l_, sigma_c_, shift_l_, shift_c_;

  mutable Evaluator::Work work_;
  mutable Eigen::VectorXd slack_l_, slack_c_;
  mutable bool work_valid_ = false;
  void refresh(const Eigen::VectorXd& x) const;
};

// s_j = eps * sigma_j^alpha_sigma
Eigen::VectorXd compute_shifts(double eps, const Eigen::VectorXd& sigma, double alpha_sigma);
// sigma_j s_j / (c_j + s_j)
Eigen::VectorXd multiplier_estimates(const Eigen::VectorXd& sigma, const Eigen::VectorXd& shift,
                                     const Eigen::VectorXd& slack);

struct KKTResiduals {
  double stationarity = 0.0;    // ||x - proj(x + grad Lagrangian)||
  double complementarity = 0.0; // ||[slack_j sigma_j]_j||
  double min_multiplier = 0.0;
};

KKTResiduals kkt_residuals(const Evaluator& ev, const UtilityProfile& prof,
                           const Eigen::VectorXd& x, const Eigen::VectorXd& sigma_link,
                           const Eigen::VectorXd& sigma_cache);

struct Certificate {
  double multiplier_bound = 0.0;  // sum_j sigma_j max(0, t_j)
  double capacity_bound = 0.0;    // theta sum_j n_j max(0, t_j) / C_j
};

// Optimality-gap certificates from the link multipliers: the objective at a
// KKT point is within multiplier_bound of the optimum, and capacity_bound
// dominates it using only instance data.
Certificate suboptimality_certificate(const Evaluator& ev, const UtilityProfile& prof,
                                      const Eigen::VectorXd& sigma_link,
                                      double theta_floor = 0.0);

struct LBSBTraceRow {
  int outer = 0;
  double objective = 0.0;
  double max_violation = 0.0;
  double satisfied_ratio = 1.0;
  double epsilon = 0.0;
  double omega = 0.0;
  double delta = 0.0;
  int inner_iters = 0;
  double elapsed_ms = 0.0;
};

struct LBSBResult {
  Strategy strategy;
  double objective = 0.0;
  Eigen::VectorXd sigma_link, sigma_cache;
  KKTResiduals kkt;
  FeasibilityReport feasibility;
  Certificate certificate;
  int outer_iters = 0;
  long inner_iters = 0;
  bool converged = false;
  std::vector<LBSBTraceRow> trace;
};

// Joint caching/admission solve.  Default start is full rejection with empty
// caches, strictly inside every shifted constraint for any sigma0 > 0.
LBSBResult solve_lbsb(const Instance& inst, const UtilityProfile& prof, const LBSBConfig& cfg = {},
                      const std::optional<Strategy>& start = std::nullopt);

// Monotone repair: scales overfull cache rows down, then raises rejection on
// requests crossing each violated link until every slack clears pad.
void make_feasible(const Evaluator& ev, Eigen::VectorXd& x, double pad = 1e-12);

}  // namespace cachenet
