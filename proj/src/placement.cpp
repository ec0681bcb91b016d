#include "cachenet/placement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cachenet {

NodePlan build_plan(const Instance& inst, const Strategy& s, int node) {
  NodePlan plan;
  plan.node = node;
  plan.rows = inst.free_slots(node);

  double total = 0.0;
  for (int i = 0; i < inst.items(); ++i) {
    if (!inst.is_server(node, i)) total += s.y_at(inst, node, i);
  }
  if (total > plan.rows + 1e-12)
    throw std::invalid_argument("fractional placement exceeds the free slots");

  int row = 0;
  double pos = 0.0;
  for (int i = 0; i < inst.items(); ++i) {
    if (inst.is_server(node, i)) continue;
    double len = s.y_at(inst, node, i);
    while (len > 0.0 && row < plan.rows) {
      const double gap = 1.0 - pos;
      if (len >= gap) {
        plan.segments.push_back({i, row, pos, 1.0});
        len -= gap;
        ++row;
        pos = 0.0;
      } else {
        plan.segments.push_back({i, row, pos, pos + len});
        pos += len;
        len = 0.0;
      }
    }
  }
  return plan;
}

std::vector<int> sample_plan(const NodePlan& plan, double tau) {
  std::vector<int> picks;
  for (const auto& seg : plan.segments) {
    if (seg.begin <= tau && tau < seg.end) picks.push_back(seg.item);
  }
  std::sort(picks.begin(), picks.end());
  picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
  return picks;
}

std::vector<double> plan_coverage(const NodePlan& plan, int items) {
  std::vector<double> cov(items, 0.0);
  for (const auto& seg : plan.segments) cov[seg.item] += seg.end - seg.begin;
  return cov;
}

std::vector<std::vector<int>> sample_placement(const Instance& inst, const Strategy& s, Rng& rng) {
  std::vector<std::vector<int>> out(inst.nodes());
  for (int v = 0; v < inst.nodes(); ++v) {
    const NodePlan plan = build_plan(inst, s, v);
    out[v] = sample_plan(plan, rng.uniform());
    for (int i = 0; i < inst.items(); ++i) {
      if (inst.is_server(v, i)) out[v].push_back(i);
    }
    std::sort(out[v].begin(), out[v].end());
  }
  return out;
}

LoadEstimate monte_carlo_load(const Instance& inst, const Strategy& s, int periods,
                              int requests_per_period, std::uint64_t seed) {
  const int E = inst.graph.num_edges();
  LoadEstimate est;
  est.periods = periods;
  est.mean = Eigen::VectorXd::Zero(E);
  est.expected = link_loads(inst, s);

  std::vector<NodePlan> plans;
  plans.reserve(inst.nodes());
  for (int v = 0; v < inst.nodes(); ++v) plans.push_back(build_plan(inst, s, v));

  std::vector<double> admitted(inst.requests.size());
  double total_rate = 0.0;
  for (std::size_t n = 0; n < inst.requests.size(); ++n) {
    admitted[n] = inst.requests[n].demand - s.r[n];
    total_rate += admitted[n];
  }

  Rng rng(seed);
  std::vector<char> cached(static_cast<std::size_t>(inst.nodes()) * inst.items());
  Eigen::VectorXd period_load(E);

  const auto route = [&](std::size_t n, double weight) {
    const Request& rq = inst.requests[n];
    for (std::size_t j = 0; j + 1 < rq.path.size(); ++j) {
      if (cached[static_cast<std::size_t>(rq.path[j]) * inst.items() + rq.item]) break;
      period_load[inst.graph.edge_id(rq.path[j + 1], rq.path[j])] += weight;
    }
  };

  for (int p = 0; p < periods; ++p) {
    std::fill(cached.begin(), cached.end(), 0);
    for (int v = 0; v < inst.nodes(); ++v) {
      for (int item : sample_plan(plans[v], rng.uniform()))
        cached[static_cast<std::size_t>(v) * inst.items() + item] = 1;
      for (int i = 0; i < inst.items(); ++i) {
        if (inst.is_server(v, i)) cached[static_cast<std::size_t>(v) * inst.items() + i] = 1;
      }
    }
    period_load.setZero();
    if (requests_per_period <= 0) {
      for (std::size_t n = 0; n < inst.requests.size(); ++n) {
        if (admitted[n] > 0.0) route(n, admitted[n]);
      }
    } else if (total_rate > 0.0) {
      const double weight = total_rate / requests_per_period;
      for (int e = 0; e < requests_per_period; ++e) route(rng.weighted(admitted), weight);
    }
    est.mean += period_load;
  }
  if (periods > 0) est.mean /= periods;
  return est;
}

}  // namespace cachenet
