#include "cachenet/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace cachenet {

namespace {

std::string edge_key(int a, int b) {
  return std::to_string(a) + "-" + std::to_string(b);
}

std::pair<int, int> parse_edge_key(const std::string& key) {
  const auto dash = key.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 >= key.size())
    throw std::invalid_argument("bad edge key: " + key);
  return {std::stoi(key.substr(0, dash)), std::stoi(key.substr(dash + 1))};
}

nlohmann::json utility_to_json(const Utility& u) {
  nlohmann::json j;
  if (u.kind() == Utility::Kind::LogShifted) {
    j["kind"] = "log_shifted";
    j["offset"] = u.offset();
  } else {
    j["kind"] = "alpha_fair";
    j["alpha"] = u.alpha();
    j["weight"] = u.weight();
  }
  return j;
}

Utility utility_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "log_shifted")
    return Utility::log_shifted(j.value("offset", 0.1));
  if (kind == "alpha_fair")
    return Utility::alpha_fair(j.at("alpha").get<double>(), j.value("weight", 1.0));
  throw std::invalid_argument("unknown utility kind: " + kind);
}

}  // namespace

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["nodes"] = inst.graph.n;

  auto edges = nlohmann::json::array();
  for (const auto& [u, v] : inst.graph.edges)
    if (u < v) edges.push_back({u, v});
  j["edges"] = std::move(edges);

  j["catalog"] = inst.catalog;

  auto servers = nlohmann::json::object();
  for (int i = 0; i < inst.catalog; ++i)
    servers[std::to_string(i)] = inst.servers[i];
  j["servers"] = std::move(servers);

  auto requests = nlohmann::json::array();
  for (const auto& req : inst.requests)
    requests.push_back({{"item", req.item}, {"path", req.path}, {"demand", req.demand}});
  j["requests"] = std::move(requests);

  auto caps = nlohmann::json::object();
  for (int e = 0; e < inst.graph.num_edges(); ++e) {
    const double c = inst.link_capacity[e];
    if (std::isfinite(c))
      caps[edge_key(inst.graph.edges[e].first, inst.graph.edges[e].second)] = c;
  }
  j["link_capacity"] = std::move(caps);

  j["cache_capacity"] = inst.cache_capacity;
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  Instance inst;
  const int n = j.at("nodes").get<int>();

  std::vector<std::pair<int, int>> und;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("edge entries must be [u, v] pairs");
    und.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  inst.graph = Graph::from_undirected(n, und);

  inst.catalog = j.at("catalog").get<int>();
  inst.servers.assign(inst.catalog, {});
  for (const auto& [key, nodes] : j.at("servers").items()) {
    const int item = std::stoi(key);
    if (item < 0 || item >= inst.catalog)
      throw std::invalid_argument("server entry for unknown item " + key);
    inst.servers[item] = nodes.get<std::vector<int>>();
  }

  for (const auto& rj : j.at("requests")) {
    Request req;
    req.item = rj.at("item").get<int>();
    req.path = rj.at("path").get<std::vector<int>>();
    req.demand = rj.value("demand", 1.0);
    inst.requests.push_back(std::move(req));
  }

  inst.link_capacity.assign(inst.graph.num_edges(),
                            std::numeric_limits<double>::quiet_NaN());
  for (const auto& [key, cap] : j.at("link_capacity").items()) {
    const auto [a, b] = parse_edge_key(key);
    const int e = inst.graph.edge_id(a, b);
    if (e < 0) throw std::invalid_argument("capacity on missing edge " + key);
    inst.link_capacity[e] = cap.get<double>();
  }

  inst.cache_capacity = j.at("cache_capacity").get<std::vector<int>>();
  validate_instance(inst);
  return inst;
}

nlohmann::json strategy_to_json(const Instance& inst, const Strategy& s) {
  nlohmann::json j;
  auto y = nlohmann::json::array();
  for (int v = 0; v < inst.nodes(); ++v) {
    std::vector<double> row(inst.catalog);
    for (int i = 0; i < inst.catalog; ++i) row[i] = s.y_at(inst, v, i);
    y.push_back(std::move(row));
  }
  j["y"] = std::move(y);
  j["r"] = s.r;
  return j;
}

Strategy strategy_from_json(const Instance& inst, const nlohmann::json& j) {
  Strategy s = Strategy::rejecting_all(inst);
  const auto& y = j.at("y");
  if (static_cast<int>(y.size()) != inst.nodes())
    throw std::invalid_argument("strategy y has wrong node count");
  for (int v = 0; v < inst.nodes(); ++v) {
    const auto row = y[v].get<std::vector<double>>();
    if (static_cast<int>(row.size()) != inst.catalog)
      throw std::invalid_argument("strategy y has wrong item count");
    for (int i = 0; i < inst.catalog; ++i) s.y_at(inst, v, i) = row[i];
  }
  s.r = j.at("r").get<std::vector<double>>();
  if (static_cast<int>(s.r.size()) != inst.n_requests())
    throw std::invalid_argument("strategy r has wrong request count");
  return s;
}

nlohmann::json profile_to_json(const UtilityProfile& prof) {
  nlohmann::json j;
  j["base"] = utility_to_json(prof.base);
  if (!prof.per_request.empty()) {
    auto arr = nlohmann::json::array();
    for (const auto& u : prof.per_request) arr.push_back(utility_to_json(u));
    j["per_request"] = std::move(arr);
  }
  return j;
}

UtilityProfile profile_from_json(const nlohmann::json& j) {
  UtilityProfile prof;
  prof.base = utility_from_json(j.at("base"));
  if (j.contains("per_request"))
    for (const auto& uj : j.at("per_request"))
      prof.per_request.push_back(utility_from_json(uj));
  return prof;
}

void save_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return nlohmann::json::parse(in);
}

Instance load_instance(const std::string& path) {
  return instance_from_json(load_json(path));
}

void save_instance(const Instance& inst, const std::string& path) {
  save_json(instance_to_json(inst), path);
}

}  // namespace cachenet
