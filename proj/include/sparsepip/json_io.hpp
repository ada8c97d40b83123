#pragma once

#include <memory>
#include <string>

#include "json.hpp"
#include "sparsepip/instance.hpp"
#include "sparsepip/rounding.hpp"
#include "sparsepip/submodular.hpp"

namespace sparsepip {

// Instance file schema (0-based indices):
//   {"n": int, "m": int, "weights": [...], "capacities": [...],
//    "entries": [[item, constraint, size], ...], "upper_bounds": [...]?}
nlohmann::json instance_to_json(const PipInstance& inst);
PipInstance instance_from_json(const nlohmann::json& j);
PipInstance load_instance_file(const std::string& path);
void save_instance_file(const PipInstance& inst, const std::string& path);

// Oracle file schema, one of:
//   {"family": "linear", "weights": [...]}
//   {"family": "coverage", "universe_weights": [...], "covers": [[...], ...]}
//   {"family": "concave_cardinality", "g": [...]}
std::unique_ptr<SubmodularOracle> oracle_from_json(const nlohmann::json& j);
std::unique_ptr<SubmodularOracle> load_oracle_file(const std::string& path);

// Regression-fixture form of a rounding trace.
nlohmann::json report_to_json(const RoundingReport& report);

}  // namespace sparsepip
