#pragma once

#include <Eigen/Core>
#include <limits>
#include <vector>

namespace cachenet {

// Concave nondecreasing utility of an admitted request rate.
//
// Two families:
//   log_shifted(offset):      U(x) = ln(x + offset)
//   alpha_fair(alpha,weight): U(x) = w * x^(1-alpha) / (1-alpha),  alpha != 1
//                             U(x) = w * ln(x),                    alpha == 1
class Utility {
 public:
  enum class Kind { LogShifted, AlphaFair };

  static Utility log_shifted(double offset = 0.1);
  static Utility alpha_fair(double alpha, double weight = 1.0);

  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;

  // sup over x in [floor, inf) of x * U'(x).  Diminishing-return scale of the
  // family; +inf for alpha_fair with alpha > 1 at floor 0 and for alpha < 1.
  double theta_bound(double floor = 0.0) const;

  bool unbounded_above() const;

  Kind kind() const { return kind_; }
  double offset() const { return offset_; }
  double alpha() const { return alpha_; }
  double weight() const { return weight_; }

 private:
  Kind kind_ = Kind::LogShifted;
  double offset_ = 0.1;
  double alpha_ = 1.0;
  double weight_ = 1.0;
};

// Utility assignment for a request list: one shared function unless a
// per-request override is present.
struct UtilityProfile {
  Utility base = Utility::log_shifted();
  std::vector<Utility> per_request;  // empty, or one entry per request

  const Utility& at(std::size_t n) const {
    return per_request.empty() ? base : per_request[n];
  }
  // max of theta_bound over requests
  double theta_bound(std::size_t n_requests, double floor = 0.0) const;
};

// Objective of the residual-rate formulation: sum of U_n(demand_n - r_n).
// Gradient entries are -U'_n(demand_n - r_n), nonpositive throughout the box.
double total_utility(const UtilityProfile& prof, const std::vector<double>& demand,
                     const Eigen::VectorXd& r);
void total_utility_gradient(const UtilityProfile& prof, const std::vector<double>& demand,
                            const Eigen::VectorXd& r, Eigen::VectorXd& grad);
// diagonal of the objective Hessian in r: U''_n(demand_n - r_n)
void total_utility_hessian_diag(const UtilityProfile& prof, const std::vector<double>& demand,
                                const Eigen::VectorXd& r, Eigen::VectorXd& diag);

}  // namespace cachenet
