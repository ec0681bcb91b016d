#include "cachenet/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace cachenet {

std::vector<double> zipf_weights(int items, double exponent) {
  std::vector<double> w(items);
  for (int k = 0; k < items; ++k)
    w[k] = std::pow(static_cast<double>(k + 1), -exponent);
  return w;
}

std::vector<int> zipf_sample_distinct(int items, double exponent, int count, Rng& rng) {
  if (count > items)
    throw std::invalid_argument("zipf_sample_distinct: count exceeds catalog");
  std::vector<double> w = zipf_weights(items, exponent);
  std::vector<int> ids(items);
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<int> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const int j = rng.weighted(w);
    out.push_back(ids[j]);
    w.erase(w.begin() + j);
    ids.erase(ids.begin() + j);
  }
  return out;
}

std::vector<int> shortest_path(const Graph& g, int from, int to) {
  if (from == to) return {from};
  std::vector<int> dist(g.n, -1);
  std::queue<int> q;
  dist[to] = 0;
  q.push(to);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : g.adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
  }
  if (dist[from] < 0) throw std::invalid_argument("shortest_path: nodes not connected");

  std::vector<int> path{from};
  int cur = from;
  while (cur != to) {
    // adjacency lists are sorted, so the first eligible neighbor is the
    // smallest id still on a shortest path
    for (int v : g.adj[cur])
      if (dist[v] == dist[cur] - 1) {
        path.push_back(v);
        cur = v;
        break;
      }
  }
  return path;
}

Instance generate_instance(const Graph& g, const WorkloadParams& p, std::uint64_t seed) {
  if (p.items < 1) throw std::invalid_argument("generate_instance: need items >= 1");
  if (p.query_nodes < 1 || p.query_nodes > g.n)
    throw std::invalid_argument("generate_instance: query_nodes out of range");
  if (p.n_requests < p.items)
    throw std::invalid_argument("generate_instance: need at least one request per item");
  const int base_count = p.n_requests / p.query_nodes;
  const int remainder = p.n_requests % p.query_nodes;
  if (base_count + (remainder > 0 ? 1 : 0) > p.items)
    throw std::invalid_argument("generate_instance: per-node request count exceeds catalog");
  if (!(p.kappa > 0.0) || !(p.demand > 0.0))
    throw std::invalid_argument("generate_instance: kappa and demand must be positive");

  Rng rng(mix_seed(seed, 0x696e7374ULL));

  Instance inst;
  inst.graph = g;
  inst.catalog = p.items;
  inst.servers.assign(p.items, {});
  for (int i = 0; i < p.items; ++i)
    inst.servers[i] = {static_cast<int>(rng.below(g.n))};

  // query nodes without replacement, then sorted so the remainder lands on
  // the lowest ids
  std::vector<int> pool(g.n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> queries;
  for (int k = 0; k < p.query_nodes; ++k) {
    const std::size_t j = k + rng.below(pool.size() - k);
    std::swap(pool[k], pool[j]);
    queries.push_back(pool[k]);
  }
  std::sort(queries.begin(), queries.end());

  for (int qi = 0; qi < p.query_nodes; ++qi) {
    const int node = queries[qi];
    const int count = base_count + (qi < remainder ? 1 : 0);
    for (int item : zipf_sample_distinct(p.items, p.zipf_exponent, count, rng)) {
      Request req;
      req.item = item;
      req.path = shortest_path(g, node, inst.servers[item][0]);
      req.demand = p.demand;
      inst.requests.push_back(std::move(req));
    }
  }

  // every item must be requested somewhere; retarget surplus requests,
  // scanning from the back, onto the missing items in ascending order
  std::vector<int> hits(p.items, 0);
  for (const auto& req : inst.requests) ++hits[req.item];
  int scan = static_cast<int>(inst.requests.size()) - 1;
  for (int item = 0; item < p.items; ++item) {
    if (hits[item] > 0) continue;
    while (scan >= 0 && hits[inst.requests[scan].item] < 2) --scan;
    if (scan < 0) throw std::logic_error("generate_instance: no surplus request left");
    Request& req = inst.requests[scan];
    --hits[req.item];
    req.item = item;
    req.path = shortest_path(g, req.path.front(), inst.servers[item][0]);
    hits[item] = 1;
    --scan;
  }

  // response traffic runs against the request path; capacity is kappa times
  // the load with nothing cached and nothing rejected
  std::vector<double> lam(g.num_edges(), 0.0);
  for (const auto& req : inst.requests)
    for (std::size_t h = 0; h + 1 < req.path.size(); ++h)
      lam[g.edge_id(req.path[h + 1], req.path[h])] += req.demand;

  inst.link_capacity.assign(g.num_edges(), std::numeric_limits<double>::quiet_NaN());
  for (int e = 0; e < g.num_edges(); ++e)
    if (lam[e] > 0.0) inst.link_capacity[e] = p.kappa * lam[e];

  inst.cache_capacity.assign(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    int pinned = 0;
    for (int i = 0; i < p.items; ++i)
      if (std::binary_search(inst.servers[i].begin(), inst.servers[i].end(), v)) ++pinned;
    inst.cache_capacity[v] = p.cache_slots + pinned;
  }

  validate_instance(inst);
  return inst;
}

Instance rescale_capacities(const Instance& inst, double factor) {
  Instance out = inst;
  for (double& c : out.link_capacity)
    if (std::isfinite(c)) c *= factor;
  return out;
}

Instance scale_instance(const Instance& inst, double factor) {
  Instance out = rescale_capacities(inst, factor);
  for (auto& req : out.requests) req.demand *= factor;
  return out;
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

RunRow make_row(const Instance& inst, const std::string& topology, std::uint64_t seed,
                double kappa, const std::string& algorithm, const Strategy& s,
                double objective, double runtime_ms, long iterations) {
  RunRow row;
  row.topology = topology;
  row.seed = seed;
  row.kappa = kappa;
  row.algorithm = algorithm;
  row.objective = objective;
  row.normalized = objective / std::max(1, inst.n_requests());
  const FeasibilityReport rep = feasibility_report(inst, s);
  row.feasible = rep.feasible;
  row.max_violation = rep.max_violation;
  row.runtime_ms = runtime_ms;
  row.iterations = iterations;
  return row;
}

}  // namespace

std::vector<RunRow> run_comparison(const Instance& inst, const UtilityProfile& prof,
                                   const std::string& topology, std::uint64_t seed,
                                   double kappa, const ComparisonConfig& cfg) {
  std::vector<RunRow> rows;

  auto t0 = std::chrono::steady_clock::now();
  const LBSBResult barrier = solve_lbsb(inst, prof, cfg.barrier);
  rows.push_back(make_row(inst, topology, seed, kappa, "barrier", barrier.strategy,
                          barrier.objective, elapsed_ms(t0), barrier.inner_iters));

  t0 = std::chrono::steady_clock::now();
  const RelaxResult env = solve_relaxation(inst, prof, cfg.rates);
  rows.push_back(make_row(inst, topology, seed, kappa, "envelope", env.strategy,
                          env.objective, elapsed_ms(t0), env.iterations));

  t0 = std::chrono::steady_clock::now();
  const BaselineResult cont = greedy_continuous(inst, prof, cfg.rates, cfg.fw_steps);
  rows.push_back(make_row(inst, topology, seed, kappa, "greedy_continuous", cont.strategy,
                          cont.objective, elapsed_ms(t0), cfg.fw_steps));

  t0 = std::chrono::steady_clock::now();
  const BaselineResult integral = greedy_integral(inst, prof, cfg.rates);
  rows.push_back(make_row(inst, topology, seed, kappa, "greedy_integral", integral.strategy,
                          integral.objective, elapsed_ms(t0), integral.placements));

  return rows;
}

std::vector<RunRow> kappa_sweep(const Instance& base, const UtilityProfile& prof,
                                const std::string& topology, std::uint64_t seed,
                                double base_kappa, const std::vector<double>& kappas,
                                const ComparisonConfig& cfg) {
  if (!(base_kappa > 0.0)) throw std::invalid_argument("kappa_sweep: base_kappa must be positive");
  std::vector<RunRow> rows;
  for (double kappa : kappas) {
    const Instance inst = rescale_capacities(base, kappa / base_kappa);
    auto batch = run_comparison(inst, prof, topology, seed, kappa, cfg);
    rows.insert(rows.end(), batch.begin(), batch.end());
  }
  return rows;
}

std::vector<ScalingRow> scaling_sweep(const Instance& inst, const UtilityProfile& prof,
                                      const std::vector<double>& factors,
                                      const LBSBConfig& cfg) {
  std::vector<ScalingRow> rows;
  for (double m : factors) {
    const Instance scaled = scale_instance(inst, m);
    const LBSBResult sol = solve_lbsb(scaled, prof, cfg);
    const UpperBoundResult ub = upper_bound(scaled, prof, {}, sol.strategy);
    ScalingRow row;
    row.factor = m;
    row.objective = sol.objective;
    row.upper = ub.value;
    row.ratio = ub.value != 0.0 ? sol.objective / ub.value : 1.0;
    row.certificate = sol.certificate.multiplier_bound;
    rows.push_back(row);
  }
  return rows;
}

void write_csv(const std::vector<RunRow>& rows, std::ostream& out) {
  out << "topology,seed,kappa,algorithm,objective,normalized,feasible,"
         "max_violation,runtime_ms,iterations\n";
  out << std::setprecision(17);
  for (const auto& r : rows)
    out << r.topology << ',' << r.seed << ',' << r.kappa << ',' << r.algorithm << ','
        << r.objective << ',' << r.normalized << ',' << (r.feasible ? 1 : 0) << ','
        << r.max_violation << ',' << r.runtime_ms << ',' << r.iterations << '\n';
}

void write_csv(const std::vector<ScalingRow>& rows, std::ostream& out) {
  out << "factor,objective,upper,ratio,certificate\n";
  out << std::setprecision(17);
  for (const auto& r : rows)
    out << r.factor << ',' << r.objective << ',' << r.upper << ',' << r.ratio << ','
        << r.certificate << '\n';
}

}  // namespace cachenet
