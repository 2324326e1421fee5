#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace fptlab {

// Fully resolved run configuration. Every field has an explicit default —
// including the seed — so a report's embedded config alone reproduces the
// run. File/flag paths for delivery (where to write the report or CSV) are
// deliberately not part of the config: they do not affect any computed byte.
struct RunConfig {
  std::string command;               // check-condition|iterate|ar-bound|moduli|ledger|suite
  std::uint64_t seed = 0;
  std::string map_name = "interval_threshold";
  std::string condition = "C_lambda";  // or "nonexpansive"
  double lambda = 0.5;
  double gamma = 0.5;
  double delta = 0.5;
  double eps = 0.1;
  double p = 2.0;
  std::uint64_t dimension = 2;
  std::string norm_kind = "p_norm";  // "p_norm" | "sup_norm"
  double step = 0.01;                // lattice step for grid checks
  double argument = 1.0;             // a for R/RW queries
  std::uint64_t samples = 10000;
  std::uint64_t steps = 1000;        // orbit length
  std::string check;                 // ledger check name; empty = all five
  std::string modulus = "all";       // moduli selection
};

// Applies the JSON document onto `base`. Unknown keys are input errors: a
// config that silently ignores a typo is worse than one that refuses it.
RunConfig apply_config_json(RunConfig base, const nlohmann::json& j);

nlohmann::json to_json(const RunConfig& cfg);

}  // namespace fptlab
