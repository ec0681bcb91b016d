#pragma once

#include <string>

#include <json.hpp>

#include "cachenet/model.hpp"
#include "cachenet/utility.hpp"

namespace cachenet {

// Instance wire format: undirected edge list, server map keyed by item,
// directed capacities keyed "a-b".  Loading validates the result.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json strategy_to_json(const Instance& inst, const Strategy& s);
Strategy strategy_from_json(const Instance& inst, const nlohmann::json& j);

nlohmann::json profile_to_json(const UtilityProfile& prof);
UtilityProfile profile_from_json(const nlohmann::json& j);

void save_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

}  // namespace cachenet
