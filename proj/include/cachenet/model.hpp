#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cachenet/rng.hpp"
#include "cachenet/utility.hpp"

namespace cachenet {

// Symmetric directed graph: (u,v) present iff (v,u) present, no self loops,
// no duplicates.  Edge ids follow lexicographic (u,v) order.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adj;  // sorted out-neighbors

  static Graph from_undirected(int n, const std::vector<std::pair<int, int>>& und);
  static Graph from_directed(int n, std::vector<std::pair<int, int>> dir);

  int edge_id(int u, int v) const;  // -1 if absent
  int num_edges() const { return static_cast<int>(edges.size()); }
  bool connected() const;

 private:
  std::vector<int> edge_lookup_;  // n*n flat table
  void build_lookup();
};

// One request class: item plus the fixed routing path, query node first,
// designated server last.
struct Request {
  int item = 0;
  std::vector<int> path;
  double demand = 1.0;
};

struct Instance {
  Graph graph;
  int catalog = 0;
  std::vector<std::vector<int>> servers;  // per item, sorted node ids
  std::vector<Request> requests;
  std::vector<double> link_capacity;  // per directed edge id; NaN when absent
  std::vector<int> cache_capacity;    // per node, total slots c_v

  int nodes() const { return graph.n; }
  int items() const { return catalog; }
  int n_requests() const { return static_cast<int>(requests.size()); }
  bool is_server(int v, int i) const;
  int pinned_count(int v) const;        // items pinned at v
  int free_slots(int v) const;          // c_v minus pinned items
  std::vector<double> demands() const;  // per request
};

// throws std::invalid_argument on any structural defect
void validate_instance(const Instance& inst);

// Mixed cache/admission strategy.  y is nodes x items row-major with server
// entries held at 1; r is the rejected rate per request, in [0, demand].
struct Strategy {
  std::vector<double> y;
  std::vector<double> r;

  static Strategy rejecting_all(const Instance& inst);  // y free = 0, r = demand
  static Strategy admitting_all(const Instance& inst);  // y free = 0, r = 0

  double y_at(const Instance& inst, int v, int i) const {
    return y[static_cast<std::size_t>(v) * inst.catalog + i];
  }
  double& y_at(const Instance& inst, int v, int i) {
    return y[static_cast<std::size_t>(v) * inst.catalog + i];
  }
};

Strategy random_strategy(const Instance& inst, Rng& rng);
Strategy strategy_join(const Strategy& a, const Strategy& b);
Strategy strategy_meet(const Strategy& a, const Strategy& b);

// Free-variable packing: x = [free y entries in (node,item) order, then r].
struct VarLayout {
  int nodes = 0, items = 0, n_requests = 0, n_y = 0;
  std::vector<int> y_var;                       // v*items+i -> var index or -1
  std::vector<std::pair<int, int>> y_of_var;    // var index -> (v,i)

  explicit VarLayout(const Instance& inst);
  int size() const { return n_y + n_requests; }
  int r_var(int n) const { return n_y + n; }
  Eigen::VectorXd pack(const Strategy& s) const;
  Strategy unpack(const Instance& inst, const Eigen::VectorXd& x) const;
};

// Values of the operating constraints at one strategy.
struct ConstraintEval {
  Eigen::VectorXd g_link;      // served rate per carrying edge
  Eigen::VectorXd threshold;   // required service t = lam_sum - capacity
  Eigen::VectorXd link_slack;  // capacity - load = g - t
  Eigen::VectorXd cache_usage; // free-entry occupancy per constrained node
  Eigen::VectorXd cache_slack; // free_slots - usage
};

struct FeasibilityReport {
  double max_violation = 0.0;
  double min_slack = 0.0;
  double satisfied_ratio = 1.0;
  bool feasible = true;
};

// Shared evaluation machinery for the served-rate functions g_ba, their
// first and second derivatives, and the concave envelopes g~_ba.
//
// A link constraint exists for each directed edge crossed by at least one
// response path; a cache constraint for each node whose free entries could
// exceed the free slots.  All derivative callbacks work on slack form
// c >= 0 with c_link = capacity - load and c_cache = free_slots - usage.
class Evaluator {
 public:
  explicit Evaluator(const Instance& inst);

  const Instance& instance() const { return *inst_; }
  const VarLayout& layout() const { return layout_; }
  int n_links() const { return static_cast<int>(link_edge_.size()); }
  int n_caches() const { return static_cast<int>(cache_node_.size()); }
  const std::vector<int>& link_edges() const { return link_edge_; }
  const std::vector<int>& cache_nodes() const { return cache_node_; }
  const Eigen::VectorXd& thresholds() const { return threshold_; }
  const Eigen::VectorXd& lam_sums() const { return lam_sum_; }
  const std::vector<int>& paths_per_link() const { return n_paths_; }

  Eigen::VectorXd lower_bounds() const;
  Eigen::VectorXd upper_bounds() const;

  // Per-point workspace holding prefix products of the miss probabilities.
  struct Work {
    Eigen::VectorXd x;
    std::vector<int> zero_count;     // cumulative zeros over each prefix
    std::vector<double> nz_product;  // cumulative product of nonzero factors
  };

  void prepare(Work& w, const Eigen::VectorXd& x) const;

  void link_slacks(const Work& w, Eigen::VectorXd& out) const;
  void cache_slacks(const Work& w, Eigen::VectorXd& out) const;
  ConstraintEval constraints(const Work& w) const;
  Eigen::VectorXd edge_loads(const Work& w) const;  // per edge id, zero when uncrossed

  // out += sum_j wl[j] * grad c_link_j + sum_v wc[v] * grad c_cache_v
  void add_weighted_gradient(const Work& w, const Eigen::VectorXd& wl,
                             const Eigen::VectorXd& wc, Eigen::VectorXd& out) const;
  // dl[j] = <grad c_link_j, d>, dc[v] = <grad c_cache_v, d>
  void constraint_dots(const Work& w, const Eigen::VectorXd& d, Eigen::VectorXd& dl,
                       Eigen::VectorXd& dc) const;
  // out += sum_j wl[j] * (hessian c_link_j) d   (cache constraints are linear)
  void add_weighted_hvp(const Work& w, const Eigen::VectorXd& d, const Eigen::VectorXd& wl,
                        Eigen::VectorXd& out) const;

  // dense single-constraint gradients, test and certificate use
  Eigen::VectorXd link_constraint_gradient(const Work& w, int j) const;
  Eigen::VectorXd cache_constraint_gradient(int v_idx) const;

  // concave envelopes, one value per link constraint
  void gtilde(const Eigen::VectorXd& x, Eigen::VectorXd& out) const;
  // supergradient of g~_j; flat-side zero at the kink
  void gtilde_supergradient(const Eigen::VectorXd& x, int j, Eigen::VectorXd& out) const;

 private:
  const Instance* inst_;
  VarLayout layout_;

  struct Term {
    int request;
    int prefix_len;
  };
  std::vector<int> link_edge_;      // constraint -> edge id
  std::vector<Term> terms_;         // grouped by constraint
  std::vector<int> term_begin_;     // per constraint, index into terms_
  Eigen::VectorXd lam_sum_;
  Eigen::VectorXd threshold_;
  std::vector<int> n_paths_;

  std::vector<int> cache_node_;
  std::vector<std::vector<int>> cache_vars_;  // free y var ids per constrained node

  std::vector<std::vector<int>> prefix_vars_;  // per request, y var per path position
  std::vector<int> pref_off_;                  // workspace offsets per request

  double prefix_product(const Work& w, int n, int len) const;
  double prefix_product_excl(const Work& w, int n, int len, int skip) const;
};

Eigen::VectorXd link_loads(const Instance& inst, const Strategy& s);
ConstraintEval constraint_values(const Instance& inst, const Strategy& s);
FeasibilityReport feasibility_report(const Instance& inst, const Strategy& s, double tol = 1e-9);

// min over sampled strategy pairs and carrying edges of
// g(a) + g(b) - g(join) - g(meet); nonnegative for DR-submodular g
double lattice_check_sample(const Instance& inst, std::uint64_t seed, int pairs);

}  // namespace cachenet
