#pragma once

#include "cachenet/relax.hpp"

namespace cachenet {

struct RateOnlyResult {
  Strategy strategy;
  double objective = 0.0;
  bool feasible = false;
  int iterations = 0;
};

// Admission-only optimization at a fixed placement.  The link loads are
// linear in r once y is held, so the switching subgradient applies directly
// to the true constraints.
RateOnlyResult solve_rate_only(const Instance& inst, const UtilityProfile& prof,
                               const Strategy& placement, const SubgradientConfig& cfg = {});

// Conditional-gradient ascent of the total served rate in y at the base
// strategy's admissions: each of the `steps` rounds moves 1/steps toward the
// per-node assignment filling the free slots with the largest gradients
// (ties to the lowest item).  Result stays inside the cache polytope.
Strategy frank_wolfe_placement(const Instance& inst, const Strategy& base, int steps = 100);

// sum of served rates over the carrying links
double total_served(const Instance& inst, const Strategy& s);

struct BaselineResult {
  Strategy strategy;
  double objective = 0.0;
  bool feasible = false;
  int placements = 0;
};

// admission solve, fractional placement ascent, admission solve
BaselineResult greedy_continuous(const Instance& inst, const UtilityProfile& prof,
                                 const SubgradientConfig& rate_cfg = {}, int fw_steps = 100);

// alternates admission solves with whole-item placements, each round caching
// the (node, item) pair recovering the most load, until no pair helps
BaselineResult greedy_integral(const Instance& inst, const UtilityProfile& prof,
                               const SubgradientConfig& rate_cfg = {});

}  // namespace cachenet
