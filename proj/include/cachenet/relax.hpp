#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cachenet/boxsolve.hpp"
#include "cachenet/model.hpp"
#include "cachenet/utility.hpp"

namespace cachenet {

// Projected subgradient with constraint switching: move along the most
// violated slack when one exists, along the objective otherwise, and keep
// the best strictly feasible iterate seen.
struct SubgradientConfig {
  int iterations = 500;
  double step_scale = 0.0;  // 0 picks 0.1 * max demand
};

struct SubgradientProblem {
  std::function<double(const Eigen::VectorXd&)> objective;
  std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> objective_supergrad;
  std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> slacks;
  std::function<void(const Eigen::VectorXd&, int, Eigen::VectorXd&)> slack_supergrad;
};

struct SubgradientResult {
  Eigen::VectorXd best_x;
  double best_value = 0.0;
  bool found_feasible = false;
  Eigen::VectorXd last_x;
  int iterations = 0;
};

SubgradientResult subgradient_maximize(const SubgradientProblem& p, const Box& box,
                                       const Eigen::VectorXd& x0, const SubgradientConfig& cfg,
                                       double step_scale);

// Constraint set built from the concave envelopes: served-rate envelopes must
// clear the thresholds scaled by threshold_scale, cache rows stay within the
// free slots.  Slacks are ordered links first, then caches.
SubgradientProblem envelope_problem(const Evaluator& ev, const UtilityProfile& prof,
                                    double threshold_scale);

struct RelaxResult {
  Strategy strategy;
  double objective = 0.0;
  // whether the inner envelope region is nonempty; the fallback strategy
  // rejects everything and satisfies the true constraints regardless
  bool relaxation_feasible = false;
  int iterations = 0;
};

// Maximizes the utility over the inner envelope region (thresholds scaled by
// 1/(1-1/e)); any point of it satisfies the true constraints.
RelaxResult solve_relaxation(const Instance& inst, const UtilityProfile& prof,
                             const SubgradientConfig& cfg = {});

struct RepairResult {
  double beta = 1.0;    // smallest uniform rejection push reaching the region
  bool feasible = false;
};

// Moves r to r + beta (demand - r) with the least beta making every envelope
// slack nonnegative; x is left untouched when even beta = 1 fails.
RepairResult relaxation_repair(const Evaluator& ev, Eigen::VectorXd& x, double tol = 1e-12);

struct TightenedCapacities {
  std::vector<double> capacity;  // per edge id
  bool all_positive = true;
  std::optional<Instance> instance;  // present when all carried links stay positive
};

// Capacity C' = C - (lam_sum - C)/(e-1) per carrying link: the optimum of the
// tightened instance lower-bounds the envelope relaxation optimum.
TightenedCapacities tightened_capacities(const Instance& inst);

// guarantee factor (e - delta)/(e - 1) for overload ratio delta in [1, e]
double delta_guarantee(double delta);
// max over links of lam_sum / capacity; 0 when no link constraints
double overload_ratio(const Evaluator& ev);

struct UpperBoundResult {
  double value = 0.0;
  Strategy strategy;
  bool feasible = false;
  int iterations = 0;
};

// Maximizes the utility over the outer envelope region (unscaled thresholds),
// a superset of the true feasible set.  Warm starting with a feasible point
// keeps the reported value at least that point's objective.
UpperBoundResult upper_bound(const Instance& inst, const UtilityProfile& prof,
                             const SubgradientConfig& cfg = {},
                             const std::optional<Strategy>& warm = std::nullopt);

}  // namespace cachenet
