#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cachenet/baselines.hpp"
#include "cachenet/lbsb.hpp"
#include "cachenet/model.hpp"
#include "cachenet/relax.hpp"
#include "cachenet/rng.hpp"
#include "cachenet/utility.hpp"

namespace cachenet {

// Synthetic workload drawn on a topology: one uniformly placed server per
// item, query nodes chosen uniformly, items per query node drawn Zipf
// without replacement, requests routed on shortest paths, capacities set to
// kappa times the worst-case load of each carrying link.
struct WorkloadParams {
  int items = 10;
  int n_requests = 100;
  int query_nodes = 10;
  int cache_slots = 2;  // free slots per node on top of pinned items
  double kappa = 0.95;
  double zipf_exponent = 1.2;
  double demand = 1.0;
};

// w_k proportional to (k+1)^-exponent for ranks k = 0..items-1
std::vector<double> zipf_weights(int items, double exponent);

// `count` distinct items via successive renormalized Zipf draws
std::vector<int> zipf_sample_distinct(int items, double exponent, int count, Rng& rng);

// Among shortest from->to paths, the lexicographically smallest node
// sequence.  Node ids, `from` first.
std::vector<int> shortest_path(const Graph& g, int from, int to);

Instance generate_instance(const Graph& g, const WorkloadParams& p, std::uint64_t seed);

// capacity *= factor on every carrying link
Instance rescale_capacities(const Instance& inst, double factor);
// capacity and demand *= factor; utilities are unchanged
Instance scale_instance(const Instance& inst, double factor);

struct RunRow {
  std::string topology;
  std::uint64_t seed = 0;
  double kappa = 0.0;
  std::string algorithm;
  double objective = 0.0;
  double normalized = 0.0;  // objective per request
  bool feasible = false;
  double max_violation = 0.0;
  double runtime_ms = 0.0;
  long iterations = 0;
};

struct ComparisonConfig {
  LBSBConfig barrier;
  SubgradientConfig rates;
  int fw_steps = 100;
};

// Runs barrier, envelope, greedy_continuous, and greedy_integral on one
// instance.  Feasibility is always judged against the true constraints.
std::vector<RunRow> run_comparison(const Instance& inst, const UtilityProfile& prof,
                                   const std::string& topology, std::uint64_t seed,
                                   double kappa, const ComparisonConfig& cfg = {});

// Same instance under a range of capacity scalings kappa/base_kappa.
std::vector<RunRow> kappa_sweep(const Instance& base, const UtilityProfile& prof,
                                const std::string& topology, std::uint64_t seed,
                                double base_kappa, const std::vector<double>& kappas,
                                const ComparisonConfig& cfg = {});

struct ScalingRow {
  double factor = 1.0;
  double objective = 0.0;    // barrier solve on the scaled instance
  double upper = 0.0;        // envelope bound, warm started at the solve
  double ratio = 0.0;        // objective / upper
  double certificate = 0.0;  // multiplier gap bound at the solve
};

// Joint scaling of capacities and demands; the certificate column tracks the
// duality-style gap, which stays put while the objective grows.
std::vector<ScalingRow> scaling_sweep(const Instance& inst, const UtilityProfile& prof,
                                      const std::vector<double>& factors,
                                      const LBSBConfig& cfg = {});

void write_csv(const std::vector<RunRow>& rows, std::ostream& out);
void write_csv(const std::vector<ScalingRow>& rows, std::ostream& out);

}  // namespace cachenet
