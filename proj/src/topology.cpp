#include "cachenet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cachenet/rng.hpp"

namespace cachenet {

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

void add_edge(EdgeList& e, int u, int v) {
  if (u == v) return;
  if (u > v) std::swap(u, v);
  e.emplace_back(u, v);
}

}  // namespace

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 nodes");
  EdgeList e;
  for (int i = 0; i < n; ++i) add_edge(e, i, (i + 1) % n);
  return Graph::from_undirected(n, e);
}

Graph lollipop_graph(int m) {
  if (m < 2) throw std::invalid_argument("lollipop needs clique size >= 2");
  EdgeList e;
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) add_edge(e, u, v);
  for (int v = m; v < 2 * m; ++v) add_edge(e, v - 1, v);
  return Graph::from_undirected(2 * m, e);
}

Graph tree_graph(int branching, int height) {
  if (branching < 1 || height < 1)
    throw std::invalid_argument("tree needs branching >= 1 and height >= 1");
  EdgeList e;
  int n = 1;
  int level_start = 0, level_size = 1;
  for (int d = 1; d <= height; ++d) {
    const int next_start = n;
    for (int p = 0; p < level_size; ++p)
      for (int c = 0; c < branching; ++c) add_edge(e, level_start + p, n++);
    level_start = next_start;
    level_size *= branching;
  }
  return Graph::from_undirected(n, e);
}

Graph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1 || rows * cols < 2)
    throw std::invalid_argument("grid needs at least 2 nodes");
  EdgeList e;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) add_edge(e, id(r, c), id(r, c + 1));
      if (r + 1 < rows) add_edge(e, id(r, c), id(r + 1, c));
    }
  return Graph::from_undirected(rows * cols, e);
}

Graph hypercube_graph(int dim) {
  if (dim < 1 || dim > 20) throw std::invalid_argument("hypercube dim out of range");
  const int n = 1 << dim;
  EdgeList e;
  for (int u = 0; u < n; ++u)
    for (int b = 0; b < dim; ++b)
      if (!(u & (1 << b))) add_edge(e, u, u | (1 << b));
  return Graph::from_undirected(n, e);
}

Graph small_world_graph(int rows, int cols, std::uint64_t seed) {
  const Graph base = grid_graph(rows, cols);
  EdgeList e;
  for (const auto& [u, v] : base.edges)
    if (u < v) e.emplace_back(u, v);

  Rng rng(mix_seed(seed, 0x736d616c6cULL));
  const int n = rows * cols;
  for (int u = 0; u < n; ++u) {
    const int ur = u / cols, uc = u % cols;
    std::vector<double> w(n, 0.0);
    for (int v = 0; v < n; ++v) {
      const int d = std::abs(v / cols - ur) + std::abs(v % cols - uc);
      if (d >= 2) w[v] = 1.0 / (static_cast<double>(d) * d);
    }
    add_edge(e, u, static_cast<int>(rng.weighted(w)));
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return Graph::from_undirected(n, e);
}

Graph erdos_renyi_graph(int n, double p, std::uint64_t seed) {
  if (n < 2 || p <= 0.0 || p > 1.0)
    throw std::invalid_argument("erdos_renyi needs n >= 2 and p in (0, 1]");
  Rng rng(mix_seed(seed, 0x6572ULL));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    EdgeList e;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.uniform() < p) e.emplace_back(u, v);
    Graph g = Graph::from_undirected(n, e);
    if (g.connected()) return g;
  }
  throw std::runtime_error("erdos_renyi: no connected draw in 1000 attempts");
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open topology file: " + path);
  std::string line;
  int n = -1, m = -1;
  EdgeList e;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    if (n < 0) {
      if (!(ss >> n >> m)) throw std::runtime_error("bad header in " + path);
      continue;
    }
    int u, v;
    if (!(ss >> u >> v)) throw std::runtime_error("bad edge line in " + path);
    e.emplace_back(u, v);
  }
  if (n < 0) throw std::runtime_error("empty topology file: " + path);
  if (static_cast<int>(e.size()) != m)
    throw std::runtime_error("edge count mismatch in " + path);
  return Graph::from_undirected(n, e);
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  EdgeList und;
  for (const auto& [u, v] : g.edges)
    if (u < v) und.emplace_back(u, v);
  out << g.n << " " << und.size() << "\n";
  for (const auto& [u, v] : und) out << u << " " << v << "\n";
}

Graph topology_from_spec(const std::string& spec, std::uint64_t seed) {
  std::vector<std::string> parts;
  std::istringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.empty()) throw std::invalid_argument("empty topology spec");

  const auto arg = [&](std::size_t k) -> int {
    if (k >= parts.size())
      throw std::invalid_argument("topology spec missing argument: " + spec);
    return std::stoi(parts[k]);
  };

  const std::string& name = parts[0];
  if (name == "cycle") return cycle_graph(arg(1));
  if (name == "lollipop") return lollipop_graph(arg(1));
  if (name == "tree") return tree_graph(arg(1), arg(2));
  if (name == "grid") return grid_graph(arg(1), arg(2));
  if (name == "hypercube") return hypercube_graph(arg(1));
  if (name == "smallworld") return small_world_graph(arg(1), arg(2), seed);
  if (name == "er") {
    if (parts.size() < 3)
      throw std::invalid_argument("er spec needs n and p: " + spec);
    return erdos_renyi_graph(arg(1), std::stod(parts[2]), seed);
  }
  return load_edge_list(spec);
}

}  // namespace cachenet
