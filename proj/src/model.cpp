#include "cachenet/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cachenet {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }
}  // namespace

// ---------------------------------------------------------------- Graph

void Graph::build_lookup() {
  edge_lookup_.assign(static_cast<std::size_t>(n) * n, -1);
  adj.assign(n, {});
  for (int e = 0; e < num_edges(); ++e) {
    auto [u, v] = edges[e];
    edge_lookup_[static_cast<std::size_t>(u) * n + v] = e;
    adj[u].push_back(v);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
}

Graph Graph::from_undirected(int n, const std::vector<std::pair<int, int>>& und) {
  std::vector<std::pair<int, int>> dir;
  dir.reserve(und.size() * 2);
  for (auto [a, b] : und) {
    dir.emplace_back(a, b);
    dir.emplace_back(b, a);
  }
  return from_directed(n, std::move(dir));
}

Graph Graph::from_directed(int n, std::vector<std::pair<int, int>> dir) {
  if (n <= 0) fail("graph: node count must be positive");
  Graph g;
  g.n = n;
  std::sort(dir.begin(), dir.end());
  for (std::size_t k = 0; k < dir.size(); ++k) {
    auto [a, b] = dir[k];
    if (a < 0 || a >= n || b < 0 || b >= n) fail("graph: edge endpoint out of range");
    if (a == b) fail("graph: self loop");
    if (k > 0 && dir[k] == dir[k - 1]) fail("graph: duplicate edge");
  }
  g.edges = std::move(dir);
  g.build_lookup();
  for (auto [a, b] : g.edges)
    if (g.edge_id(b, a) < 0) fail("graph: missing reverse edge");
  return g;
}

int Graph::edge_id(int u, int v) const {
  if (u < 0 || u >= n || v < 0 || v >= n) return -1;
  return edge_lookup_[static_cast<std::size_t>(u) * n + v];
}

bool Graph::connected() const {
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        q.push_back(v);
      }
  }
  return count == n;
}

// ---------------------------------------------------------------- Instance

bool Instance::is_server(int v, int i) const {
  const auto& s = servers[i];
  return std::binary_search(s.begin(), s.end(), v);
}

int Instance::pinned_count(int v) const {
  int c = 0;
  for (int i = 0; i < catalog; ++i) c += is_server(v, i) ? 1 : 0;
  return c;
}

int Instance::free_slots(int v) const { return cache_capacity[v] - pinned_count(v); }

std::vector<double> Instance::demands() const {
  std::vector<double> d(requests.size());
  for (std::size_t n = 0; n < requests.size(); ++n) d[n] = requests[n].demand;
  return d;
}

void validate_instance(const Instance& inst) {
  const Graph& g = inst.graph;
  if (g.n <= 0) fail("instance: empty graph");
  if (inst.catalog <= 0) fail("instance: empty catalog");
  if (static_cast<int>(inst.servers.size()) != inst.catalog)
    fail("instance: server list size must equal catalog size");
  for (int i = 0; i < inst.catalog; ++i) {
    const auto& s = inst.servers[i];
    if (s.empty()) fail("instance: item " + std::to_string(i) + " has no server");
    if (!std::is_sorted(s.begin(), s.end())) fail("instance: server lists must be sorted");
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] < 0 || s[k] >= g.n) fail("instance: server node out of range");
      if (k > 0 && s[k] == s[k - 1]) fail("instance: duplicate server node");
    }
  }
  if (static_cast<int>(inst.cache_capacity.size()) != g.n)
    fail("instance: cache capacity list size must equal node count");
  for (int v = 0; v < g.n; ++v) {
    if (inst.cache_capacity[v] < 0) fail("instance: negative cache capacity");
    if (inst.free_slots(v) < 0)
      fail("instance: node " + std::to_string(v) + " cannot hold its pinned items");
  }
  if (static_cast<int>(inst.link_capacity.size()) != g.num_edges())
    fail("instance: link capacity list size must equal edge count");

  std::vector<char> carrying(g.num_edges(), 0);
  for (std::size_t n = 0; n < inst.requests.size(); ++n) {
    const Request& req = inst.requests[n];
    const std::string tag = "request " + std::to_string(n);
    if (req.item < 0 || req.item >= inst.catalog) fail("instance: " + tag + ": item out of range");
    if (!(req.demand > 0.0)) fail("instance: " + tag + ": demand must be positive");
    if (req.path.empty()) fail("instance: " + tag + ": empty path");
    std::set<int> visited;
    for (std::size_t k = 0; k < req.path.size(); ++k) {
      int v = req.path[k];
      if (v < 0 || v >= g.n) fail("instance: " + tag + ": path node out of range");
      if (!visited.insert(v).second) fail("instance: " + tag + ": path revisits a node");
      if (k + 1 < req.path.size()) {
        int e = g.edge_id(req.path[k], req.path[k + 1]);
        if (e < 0) fail("instance: " + tag + ": path uses a missing edge");
        carrying[g.edge_id(req.path[k + 1], req.path[k])] = 1;
        if (inst.is_server(v, req.item))
          fail("instance: " + tag + ": hits a server before the path end");
      } else if (!inst.is_server(v, req.item)) {
        fail("instance: " + tag + ": path must end at a server of its item");
      }
    }
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!carrying[e]) continue;
    double c = inst.link_capacity[e];
    if (!(std::isfinite(c) && c > 0.0)) {
      auto [u, v] = g.edges[e];
      fail("instance: carrying edge " + std::to_string(u) + "-" + std::to_string(v) +
           " needs a positive capacity");
    }
  }
}

// ---------------------------------------------------------------- Strategy

Strategy Strategy::rejecting_all(const Instance& inst) {
  Strategy s;
  s.y.assign(static_cast<std::size_t>(inst.nodes()) * inst.catalog, 0.0);
  for (int i = 0; i < inst.catalog; ++i)
    for (int v : inst.servers[i]) s.y[static_cast<std::size_t>(v) * inst.catalog + i] = 1.0;
  s.r.resize(inst.requests.size());
  for (std::size_t n = 0; n < inst.requests.size(); ++n) s.r[n] = inst.requests[n].demand;
  return s;
}

Strategy Strategy::admitting_all(const Instance& inst) {
  Strategy s = rejecting_all(inst);
  std::fill(s.r.begin(), s.r.end(), 0.0);
  return s;
}

Strategy random_strategy(const Instance& inst, Rng& rng) {
  Strategy s = Strategy::admitting_all(inst);
  for (int v = 0; v < inst.nodes(); ++v)
    for (int i = 0; i < inst.catalog; ++i)
      if (!inst.is_server(v, i)) s.y_at(inst, v, i) = rng.uniform();
  for (std::size_t n = 0; n < s.r.size(); ++n) s.r[n] = rng.uniform() * inst.requests[n].demand;
  return s;
}

Strategy strategy_join(const Strategy& a, const Strategy& b) {
  Strategy s = a;
  for (std::size_t k = 0; k < s.y.size(); ++k) s.y[k] = std::max(a.y[k], b.y[k]);
  for (std::size_t k = 0; k < s.r.size(); ++k) s.r[k] = std::max(a.r[k], b.r[k]);
  return s;
}

Strategy strategy_meet(const Strategy& a, const Strategy& b) {
  Strategy s = a;
  for (std::size_t k = 0; k < s.y.size(); ++k) s.y[k] = std::min(a.y[k], b.y[k]);
  for (std::size_t k = 0; k < s.r.size(); ++k) s.r[k] = std::min(a.r[k], b.r[k]);
  return s;
}

// ---------------------------------------------------------------- VarLayout

VarLayout::VarLayout(const Instance& inst) {
  nodes = inst.nodes();
  items = inst.catalog;
  n_requests = inst.n_requests();
  y_var.assign(static_cast<std::size_t>(nodes) * items, -1);
  for (int v = 0; v < nodes; ++v)
    for (int i = 0; i < items; ++i)
      if (!inst.is_server(v, i)) {
        y_var[static_cast<std::size_t>(v) * items + i] = n_y++;
        y_of_var.emplace_back(v, i);
      }
}

Eigen::VectorXd VarLayout::pack(const Strategy& s) const {
  Eigen::VectorXd x(size());
  for (int k = 0; k < n_y; ++k) {
    auto [v, i] = y_of_var[k];
    x[k] = s.y[static_cast<std::size_t>(v) * items + i];
  }
  for (int n = 0; n < n_requests; ++n) x[r_var(n)] = s.r[n];
  return x;
}

Strategy VarLayout::unpack(const Instance& inst, const Eigen::VectorXd& x) const {
  Strategy s = Strategy::admitting_all(inst);
  for (int k = 0; k < n_y; ++k) {
    auto [v, i] = y_of_var[k];
    s.y[static_cast<std::size_t>(v) * items + i] = x[k];
  }
  for (int n = 0; n < n_requests; ++n) s.r[n] = x[r_var(n)];
  return s;
}

// ---------------------------------------------------------------- Evaluator

Evaluator::Evaluator(const Instance& inst) : inst_(&inst), layout_(inst) {
  validate_instance(inst);
  const Graph& g = inst.graph;

  prefix_vars_.resize(inst.n_requests());
  pref_off_.resize(inst.n_requests() + 1, 0);
  for (int n = 0; n < inst.n_requests(); ++n) {
    const Request& req = inst.requests[n];
    int plen = static_cast<int>(req.path.size()) - 1;
    prefix_vars_[n].resize(plen);
    for (int j = 0; j < plen; ++j) {
      int var = layout_.y_var[static_cast<std::size_t>(req.path[j]) * inst.catalog + req.item];
      prefix_vars_[n][j] = var;
    }
    pref_off_[n + 1] = pref_off_[n] + plen;
  }

  // link constraints in edge-id order, carrying edges only
  std::vector<std::vector<Term>> per_edge(g.num_edges());
  std::vector<double> lam_per_edge(g.num_edges(), 0.0);
  for (int n = 0; n < inst.n_requests(); ++n) {
    const Request& req = inst.requests[n];
    for (std::size_t j = 0; j + 1 < req.path.size(); ++j) {
      int e = g.edge_id(req.path[j + 1], req.path[j]);
      per_edge[e].push_back({n, static_cast<int>(j) + 1});
      lam_per_edge[e] += req.demand;
    }
  }
  for (int e = 0; e < g.num_edges(); ++e)
    if (!per_edge[e].empty()) link_edge_.push_back(e);
  lam_sum_.resize(n_links());
  threshold_.resize(n_links());
  n_paths_.resize(n_links());
  term_begin_.assign(n_links() + 1, 0);
  for (int j = 0; j < n_links(); ++j) {
    int e = link_edge_[j];
    lam_sum_[j] = lam_per_edge[e];
    threshold_[j] = lam_per_edge[e] - inst.link_capacity[e];
    n_paths_[j] = static_cast<int>(per_edge[e].size());
    term_begin_[j + 1] = term_begin_[j] + n_paths_[j];
    terms_.insert(terms_.end(), per_edge[e].begin(), per_edge[e].end());
  }

  // cache constraints only where the free entries could overfill the node
  for (int v = 0; v < inst.nodes(); ++v) {
    std::vector<int> vars;
    for (int i = 0; i < inst.catalog; ++i) {
      int var = layout_.y_var[static_cast<std::size_t>(v) * inst.catalog + i];
      if (var >= 0) vars.push_back(var);
    }
    if (static_cast<int>(vars.size()) > inst.free_slots(v)) {
      cache_node_.push_back(v);
      cache_vars_.push_back(std::move(vars));
    }
  }
}

Eigen::VectorXd Evaluator::lower_bounds() const {
  return Eigen::VectorXd::Zero(layout_.size());
}

Eigen::VectorXd Evaluator::upper_bounds() const {
  Eigen::VectorXd ub(layout_.size());
  ub.head(layout_.n_y).setOnes();
  for (int n = 0; n < layout_.n_requests; ++n) ub[layout_.r_var(n)] = inst_->requests[n].demand;
  return ub;
}

void Evaluator::prepare(Work& w, const Eigen::VectorXd& x) const {
  w.x = x;
  w.zero_count.assign(pref_off_.back(), 0);
  w.nz_product.assign(pref_off_.back(), 1.0);
  for (int n = 0; n < inst_->n_requests(); ++n) {
    int off = pref_off_[n];
    int zc = 0;
    double nz = 1.0;
    for (std::size_t j = 0; j < prefix_vars_[n].size(); ++j) {
      double z = 1.0 - x[prefix_vars_[n][j]];
      if (z == 0.0)
        ++zc;
      else
        nz *= z;
      w.zero_count[off + j] = zc;
      w.nz_product[off + j] = nz;
    }
  }
}

double Evaluator::prefix_product(const Work& w, int n, int len) const {
  int at = pref_off_[n] + len - 1;
  return w.zero_count[at] > 0 ? 0.0 : w.nz_product[at];
}

double Evaluator::prefix_product_excl(const Work& w, int n, int len, int skip) const {
  int at = pref_off_[n] + len - 1;
  int zc = w.zero_count[at];
  double nz = w.nz_product[at];
  double zj = 1.0 - w.x[prefix_vars_[n][skip]];
  if (zc == 0) return nz / zj;
  if (zc == 1) return zj == 0.0 ? nz : 0.0;
  return 0.0;
}

void Evaluator::link_slacks(const Work& w, Eigen::VectorXd& out) const {
  out.resize(n_links());
  for (int j = 0; j < n_links(); ++j) {
    double load = 0.0;
    for (int t = term_begin_[j]; t < term_begin_[j + 1]; ++t) {
      const Term& tm = terms_[t];
      double q = inst_->requests[tm.request].demand - w.x[layout_.r_var(tm.request)];
      load += q * prefix_product(w, tm.request, tm.prefix_len);
    }
    out[j] = inst_->link_capacity[link_edge_[j]] - load;
  }
}

void Evaluator::cache_slacks(const Work& w, Eigen::VectorXd& out) const {
  out.resize(n_caches());
  for (int v = 0; v < n_caches(); ++v) {
    double usage = 0.0;
    for (int var : cache_vars_[v]) usage += w.x[var];
    out[v] = inst_->free_slots(cache_node_[v]) - usage;
  }
}

ConstraintEval Evaluator::constraints(const Work& w) const {
  ConstraintEval ce;
  ce.threshold = threshold_;
  ce.g_link.resize(n_links());
  ce.link_slack.resize(n_links());
  for (int j = 0; j < n_links(); ++j) {
    double load = 0.0;
    for (int t = term_begin_[j]; t < term_begin_[j + 1]; ++t) {
      const Term& tm = terms_[t];
      double q = inst_->requests[tm.request].demand - w.x[layout_.r_var(tm.request)];
      load += q * prefix_product(w, tm.request, tm.prefix_len);
    }
    ce.g_link[j] = lam_sum_[j] - load;
    ce.link_slack[j] = inst_->link_capacity[link_edge_[j]] - load;
  }
  cache_slacks(w, ce.cache_slack);
  ce.cache_usage.resize(n_caches());
  for (int v = 0; v < n_caches(); ++v)
    ce.cache_usage[v] = inst_->free_slots(cache_node_[v]) - ce.cache_slack[v];
  return ce;
}

Eigen::VectorXd Evaluator::edge_loads(const Work& w) const {
  Eigen::VectorXd loads = Eigen::VectorXd::Zero(inst_->graph.num_edges());
  Eigen::VectorXd slack;
  link_slacks(w, slack);
  for (int j = 0; j < n_links(); ++j)
    loads[link_edge_[j]] = inst_->link_capacity[link_edge_[j]] - slack[j];
  return loads;
}

void Evaluator::add_weighted_gradient(const Work& w, const Eigen::VectorXd& wl,
                                      const Eigen::VectorXd& wc, Eigen::VectorXd& out) const {
  for (int j = 0; j < n_links(); ++j) {
    double wgt = wl[j];
    if (wgt == 0.0) continue;
    for (int t = term_begin_[j]; t < term_begin_[j + 1]; ++t) {
      const Term& tm = terms_[t];
      double q = inst_->requests[tm.request].demand - w.x[layout_.r_var(tm.request)];
      out[layout_.r_var(tm.request)] += wgt * prefix_product(w, tm.request, tm.prefix_len);
      for (int jj = 0; jj < tm.prefix_len; ++jj)
        out[prefix_vars_[tm.request][jj]] +=
            wgt * q * prefix_product_excl(w, tm.request, tm.prefix_len, jj);
    }
  }
  for (int v = 0; v < n_caches(); ++v) {
    double wgt = wc[v];
    if (wgt == 0.0) continue;
    for (int var : cache_vars_[v]) out[var] -= wgt;
  }
}

void Evaluator::constraint_dots(const Work& w, const Eigen::VectorXd& d, Eigen::VectorXd& dl,
                                Eigen::VectorXd& dc) const {
  dl.resize(n_links());
  for (int j = 0; j < n_links(); ++j) {
    double acc = 0.0;
    for (int t = term_begin_[j]; t < term_begin_[j + 1]; ++t) {
      const Term& tm = terms_[t];
      double q = inst_->requests[tm.request].demand - w.x[layout_.r_var(tm.request)];
      acc += prefix_product(w, tm.request, tm.prefix_len) * d[layout_.r_var(tm.request)];
      for (int jj = 0; jj < tm.prefix_len; ++jj)
        acc += q * prefix_product_excl(w, tm.request, tm.prefix_len, jj) * d[prefix_vars_[tm.request][jj]];
    }
    dl[j] = acc;
  }
  dc.resize(n_caches());
  for (int v = 0; v < n_caches(); ++v) {
    double acc = 0.0;
    for (int var : cache_vars_[v]) acc -= d[var];
    dc[v] = acc;
  }
}

void Evaluator::add_weighted_hvp(const Work& w, const Eigen::VectorXd& d, const Eigen::VectorXd& wl,
                                 Eigen::VectorXd& out) const {
  for (int j = 0; j < n_links(); ++j) {
    double wgt = wl[j];
    if (wgt == 0.0) continue;
    for (int t = term_begin_[j]; t < term_begin_[j + 1]; ++t) {
      const Term& tm = terms_[t];
      const auto& pv = prefix_vars_[tm.request];
      int L = tm.prefix_len;
      int rv = layout_.r_var(tm.request);
      double q = inst_->requests[tm.request].demand - w.x[rv];
      int at = pref_off_[tm.request] + L - 1;
      int zc = w.zero_count[at];
      if (zc > 2) continue;
      double nz = w.nz_product[at];

      // up to two zero factors handled exactly; T sums d_l / z_l over nonzeros
      int za = -1, zb = -1;
      double T = 0.0;
      for (int l = 0; l < L; ++l) {
        double z = 1.0 - w.x[pv[l]];
        if (z == 0.0) {
          if (za < 0)
            za = l;
          else
            zb = l;
        } else {
          T += d[pv[l]] / z;
        }
      }

      double dr = d[rv];
      double cross_r = 0.0;  // sum_j P_excl(j) d_yj
      for (int l = 0; l < L; ++l) {
        double z = 1.0 - w.x[pv[l]];
        double pe;  // product excluding l
        if (zc == 0)
          pe = nz / z;
        else if (zc == 1)
          pe = (z == 0.0) ? nz : 0.0;
        else
          pe = 0.0;
        cross_r += pe * d[pv[l]];

        double S;  // sum_{m != l} P_excl(l,m) d_ym
        if (zc == 0) {
          S = (nz / z) * (T - d[pv[l]] / z);
        } else if (zc == 1) {
          S = (l == za) ? nz * T : (nz / z) * d[pv[za]];
        } else {  // zc == 2
          if (l == za)
            S = nz * d[pv[zb]];
          else if (l == zb)
            S = nz * d[pv[za]];
          else
            S = 0.0;
        }
        out[pv[l]] -= wgt * (pe * dr + q * S);
      }
      out[rv] -= wgt * cross_r;
    }
  }
}

Eigen::VectorXd Evaluator::link_constraint_gradient(const Work& w, int j) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(layout_.size());
  Eigen::VectorXd wl = Eigen::VectorXd::Zero(n_links());
  Eigen::VectorXd wc = Eigen::VectorXd::Zero(n_caches());
  wl[j] = 1.0;
  add_weighted_gradient(w, wl, wc, out);
  return out;
}

Eigen::VectorXd Evaluator::cache_constraint_gradient(int v_idx) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(layout_.size());
  for (int var : cache_vars_[v_idx]) out[var] = -1.0;
  return out;
}

void Evaluator::gtilde(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
  out.resize(n_links());
  for (int j = 0; j < n_links(); ++j) {
    double acc = 0.0;
    for (int t = term_begin_[j]; t < term_begin_[j + 1]; ++t) {
      const Term& tm = terms_[t];
      double lam = inst_->requests[tm.request].demand;
      double arg = x[layout_.r_var(tm.request)] / lam;
      for (int jj = 0; jj < tm.prefix_len; ++jj) arg += x[prefix_vars_[tm.request][jj]];
      acc += lam * std::min(1.0, arg);
    }
    out[j] = acc;
  }
}

void Evaluator::gtilde_supergradient(const Eigen::VectorXd& x, int j, Eigen::VectorXd& out) const {
  out = Eigen::VectorXd::Zero(layout_.size());
  for (int t = term_begin_[j]; t < term_begin_[j + 1]; ++t) {
    const Term& tm = terms_[t];
    double lam = inst_->requests[tm.request].demand;
    double arg = x[layout_.r_var(tm.request)] / lam;
    for (int jj = 0; jj < tm.prefix_len; ++jj) arg += x[prefix_vars_[tm.request][jj]];
    if (arg < 1.0) {
      out[layout_.r_var(tm.request)] += 1.0;
      for (int jj = 0; jj < tm.prefix_len; ++jj) out[prefix_vars_[tm.request][jj]] += lam;
    }
  }
}

// ---------------------------------------------------------------- free ops

Eigen::VectorXd link_loads(const Instance& inst, const Strategy& s) {
  Evaluator ev(inst);
  Evaluator::Work w;
  ev.prepare(w, ev.layout().pack(s));
  return ev.edge_loads(w);
}

ConstraintEval constraint_values(const Instance& inst, const Strategy& s) {
  Evaluator ev(inst);
  Evaluator::Work w;
  ev.prepare(w, ev.layout().pack(s));
  return ev.constraints(w);
}

FeasibilityReport feasibility_report(const Instance& inst, const Strategy& s, double tol) {
  Evaluator ev(inst);
  Evaluator::Work w;
  ev.prepare(w, ev.layout().pack(s));
  ConstraintEval ce = ev.constraints(w);
  FeasibilityReport rep;
  rep.min_slack = std::numeric_limits<double>::infinity();
  int total = ev.n_links() + ev.n_caches(), ok = 0;
  auto absorb = [&](double slack) {
    rep.min_slack = std::min(rep.min_slack, slack);
    rep.max_violation = std::max(rep.max_violation, -slack);
    if (slack >= -tol) ++ok;
  };
  for (int j = 0; j < ev.n_links(); ++j) absorb(ce.link_slack[j]);
  for (int v = 0; v < ev.n_caches(); ++v) absorb(ce.cache_slack[v]);
  if (total == 0) rep.min_slack = 0.0;
  rep.satisfied_ratio = total == 0 ? 1.0 : static_cast<double>(ok) / total;
  rep.feasible = rep.max_violation <= tol;
  return rep;
}

double lattice_check_sample(const Instance& inst, std::uint64_t seed, int pairs) {
  Evaluator ev(inst);
  Rng rng(seed);
  double min_defect = std::numeric_limits<double>::infinity();
  Evaluator::Work w;
  Eigen::VectorXd ga, gb, gj, gm, t = ev.thresholds();
  auto g_of = [&](const Strategy& s, Eigen::VectorXd& out) {
    ev.prepare(w, ev.layout().pack(s));
    ev.link_slacks(w, out);
    out += t;
  };
  for (int p = 0; p < pairs; ++p) {
    Strategy a = random_strategy(inst, rng);
    Strategy b = random_strategy(inst, rng);
    g_of(a, ga);
    g_of(b, gb);
    g_of(strategy_join(a, b), gj);
    g_of(strategy_meet(a, b), gm);
    for (int j = 0; j < ev.n_links(); ++j)
      min_defect = std::min(min_defect, ga[j] + gb[j] - gj[j] - gm[j]);
  }
  return min_defect;
}

}  // namespace cachenet
