#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "cachenet/io.hpp"

using namespace cachenet;

namespace {

Instance sample_instance() {
  Instance inst;
  inst.graph = Graph::from_undirected(3, {{0, 1}, {1, 2}});
  inst.catalog = 2;
  inst.servers = {{2}, {0}};
  inst.requests.push_back({0, {0, 1, 2}, 1.0});
  inst.requests.push_back({0, {1, 2}, 0.75});
  inst.requests.push_back({1, {2, 1, 0}, 0.5});
  inst.link_capacity.assign(inst.graph.num_edges(),
                            std::numeric_limits<double>::quiet_NaN());
  inst.link_capacity[inst.graph.edge_id(1, 0)] = 0.85;
  inst.link_capacity[inst.graph.edge_id(2, 1)] = 1.7;
  inst.link_capacity[inst.graph.edge_id(0, 1)] = 0.5;
  inst.link_capacity[inst.graph.edge_id(1, 2)] = 0.5;
  inst.cache_capacity = {1, 1, 1};
  validate_instance(inst);
  return inst;
}

}  // namespace

TEST_CASE("instance round trip preserves every field") {
  const Instance inst = sample_instance();
  const Instance back = instance_from_json(instance_to_json(inst));

  CHECK(back.graph.n == inst.graph.n);
  CHECK(back.graph.edges == inst.graph.edges);
  CHECK(back.catalog == inst.catalog);
  CHECK(back.servers == inst.servers);
  CHECK(back.cache_capacity == inst.cache_capacity);

  REQUIRE(back.requests.size() == inst.requests.size());
  for (std::size_t n = 0; n < inst.requests.size(); ++n) {
    CHECK(back.requests[n].item == inst.requests[n].item);
    CHECK(back.requests[n].path == inst.requests[n].path);
    CHECK(back.requests[n].demand == inst.requests[n].demand);
  }

  REQUIRE(back.link_capacity.size() == inst.link_capacity.size());
  for (std::size_t e = 0; e < inst.link_capacity.size(); ++e) {
    if (std::isnan(inst.link_capacity[e]))
      CHECK(std::isnan(back.link_capacity[e]));
    else
      CHECK(back.link_capacity[e] == inst.link_capacity[e]);
  }
}

TEST_CASE("strategy round trip is bit exact") {
  const Instance inst = sample_instance();
  Strategy s = Strategy::rejecting_all(inst);
  s.y_at(inst, 1, 0) = 0.62511111111111109;
  s.y_at(inst, 1, 1) = 0.25;
  s.r = {0.125, 0.0, 0.33333333333333331};

  const Strategy back = strategy_from_json(inst, strategy_to_json(inst, s));
  CHECK(back.y == s.y);
  CHECK(back.r == s.r);
}

TEST_CASE("utility profiles survive the wire") {
  UtilityProfile prof;
  prof.base = Utility::alpha_fair(2.0, 3.5);
  prof.per_request = {Utility::log_shifted(0.25), Utility::alpha_fair(1.0, 2.0)};

  const UtilityProfile back = profile_from_json(profile_to_json(prof));
  CHECK(back.base.kind() == Utility::Kind::AlphaFair);
  CHECK(back.base.alpha() == 2.0);
  CHECK(back.base.weight() == 3.5);
  REQUIRE(back.per_request.size() == 2);
  CHECK(back.per_request[0].kind() == Utility::Kind::LogShifted);
  CHECK(back.per_request[0].offset() == 0.25);
  CHECK(back.per_request[1].alpha() == 1.0);

  UtilityProfile plain;
  const auto j = profile_to_json(plain);
  CHECK(!j.contains("per_request"));
  CHECK(profile_from_json(j).per_request.empty());
}

TEST_CASE("malformed documents are rejected") {
  const Instance inst = sample_instance();

  auto j = instance_to_json(inst);
  j["link_capacity"]["0-2"] = 1.0;
  CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);

  j = instance_to_json(inst);
  j["servers"]["7"] = {0};
  CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);

  auto sj = strategy_to_json(inst, Strategy::rejecting_all(inst));
  sj["r"].push_back(0.0);
  CHECK_THROWS_AS(strategy_from_json(inst, sj), std::invalid_argument);

  nlohmann::json uj = {{"base", {{"kind", "quadratic"}}}};
  CHECK_THROWS_AS(profile_from_json(uj), std::invalid_argument);
}

TEST_CASE("file save and load") {
  const auto path =
      (std::filesystem::temp_directory_path() / "cachenet_io_test.json").string();
  const Instance inst = sample_instance();
  save_instance(inst, path);
  const Instance back = load_instance(path);
  CHECK(back.graph.edges == inst.graph.edges);
  CHECK(back.n_requests() == inst.n_requests());
  std::filesystem::remove(path);

  CHECK_THROWS_AS(load_instance("/nonexistent/cachenet.json"), std::runtime_error);
}
