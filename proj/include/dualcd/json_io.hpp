#pragma once

#include <json.hpp>
#include <string>

#include "dualcd/dual_core.hpp"
#include "dualcd/harness.hpp"
#include "dualcd/instances.hpp"

namespace dualcd {

using Json = nlohmann::json;

Json set_to_json(const ConvexSet& s);
ConvexSet set_from_json(const Json& j);

Json objective_to_json(const Objective& o);
Objective objective_from_json(const Json& j);

Json instance_to_json(const ProblemInstance& p);
ProblemInstance instance_from_json(const Json& j);

// Checkpoint for a dual iterate: the blocks alone; caches are rebuilt on load.
Json dual_state_to_json(const DualState& y);
DualState dual_state_from_json(const ProblemInstance& p, const Json& j);

ExperimentConfig experiment_config_from_json(const Json& j);

// Loads a builtin by name, otherwise reads the file at `ref`.
CertifiedInstance load_instance(const std::string& ref);

Json summary_to_json(const ExperimentSummary& s);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace dualcd
