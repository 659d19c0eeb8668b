#pragma once

#include <string>

#include "socrt/model.hpp"
#include "socrt/scenario.hpp"

namespace socrt {

/// Parse a topology from its JSON text. Strict: unknown keys, missing
/// required keys and type mismatches all raise ConfigError with a path.
Topology parse_topology(const std::string& json_text);
std::string serialize_topology(const Topology& t, int indent = 2);

Topology load_topology_file(const std::string& path);

/// Parse a scenario (workload description) from JSON text.
Scenario parse_scenario(const std::string& json_text);
std::string serialize_scenario(const Scenario& s, int indent = 2);

Scenario load_scenario_file(const std::string& path);

} // namespace socrt
