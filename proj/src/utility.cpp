#include "cachenet/utility.hpp"

#include <cmath>
#include <stdexcept>

namespace cachenet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Utility Utility::log_shifted(double offset) {
  if (offset < 0.0) throw std::invalid_argument("log_shifted: offset must be >= 0");
  Utility u;
  u.kind_ = Kind::LogShifted;
  u.offset_ = offset;
  return u;
}

Utility Utility::alpha_fair(double alpha, double weight) {
  if (alpha <= 0.0) throw std::invalid_argument("alpha_fair: alpha must be > 0");
  if (weight <= 0.0) throw std::invalid_argument("alpha_fair: weight must be > 0");
  Utility u;
  u.kind_ = Kind::AlphaFair;
  u.alpha_ = alpha;
  u.weight_ = weight;
  return u;
}

double Utility::value(double x) const {
  if (kind_ == Kind::LogShifted) {
    double arg = x + offset_;
    return arg > 0.0 ? std::log(arg) : -kInf;
  }
  if (x < 0.0) return -kInf;
  if (alpha_ == 1.0) return x > 0.0 ? weight_ * std::log(x) : -kInf;
  if (x == 0.0) return alpha_ < 1.0 ? 0.0 : -kInf;
  return weight_ * std::pow(x, 1.0 - alpha_) / (1.0 - alpha_);
}

double Utility::d1(double x) const {
  if (kind_ == Kind::LogShifted) {
    double arg = x + offset_;
    return arg > 0.0 ? 1.0 / arg : kInf;
  }
  if (x <= 0.0) return kInf;
  return weight_ * std::pow(x, -alpha_);
}

double Utility::d2(double x) const {
  if (kind_ == Kind::LogShifted) {
    double arg = x + offset_;
    return arg > 0.0 ? -1.0 / (arg * arg) : -kInf;
  }
  if (x <= 0.0) return -kInf;
  return -alpha_ * weight_ * std::pow(x, -alpha_ - 1.0);
}

double Utility::theta_bound(double floor) const {
  if (floor < 0.0) throw std::invalid_argument("theta_bound: floor must be >= 0");
  if (kind_ == Kind::LogShifted) return 1.0;  // x/(x+offset) increases to 1
  if (alpha_ == 1.0) return weight_;          // x * w/x
  if (alpha_ > 1.0) {
    // x^(1-alpha) decreasing, sup at the floor
    if (floor == 0.0) return kInf;
    return weight_ * std::pow(floor, 1.0 - alpha_);
  }
  return kInf;  // alpha < 1: x^(1-alpha) unbounded
}

bool Utility::unbounded_above() const {
  if (kind_ == Kind::LogShifted) return true;
  return alpha_ <= 1.0;
}

double UtilityProfile::theta_bound(std::size_t n_requests, double floor) const {
  double best = 0.0;
  for (std::size_t n = 0; n < n_requests; ++n) best = std::max(best, at(n).theta_bound(floor));
  return best;
}

double total_utility(const UtilityProfile& prof, const std::vector<double>& demand,
                     const Eigen::VectorXd& r) {
  if (static_cast<std::size_t>(r.size()) != demand.size())
    throw std::invalid_argument("total_utility: demand/r size mismatch");
  double f = 0.0;
  for (std::size_t n = 0; n < demand.size(); ++n)
    f += prof.at(n).value(demand[n] - r[static_cast<Eigen::Index>(n)]);
  return f;
}

void total_utility_gradient(const UtilityProfile& prof, const std::vector<double>& demand,
                            const Eigen::VectorXd& r, Eigen::VectorXd& grad) {
  grad.resize(r.size());
  for (std::size_t n = 0; n < demand.size(); ++n) {
    auto k = static_cast<Eigen::Index>(n);
    grad[k] = -prof.at(n).d1(demand[n] - r[k]);
  }
}

void total_utility_hessian_diag(const UtilityProfile& prof, const std::vector<double>& demand,
                                const Eigen::VectorXd& r, Eigen::VectorXd& diag) {
  diag.resize(r.size());
  for (std::size_t n = 0; n < demand.size(); ++n) {
    auto k = static_cast<Eigen::Index>(n);
    diag[k] = prof.at(n).d2(demand[n] - r[k]);
  }
}

}  // namespace cachenet
