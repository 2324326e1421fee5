#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fptlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double millis = 0.0;
  std::string detail;  // witness numbers on failure, headline numbers on pass
};

struct BatteryOptions {
  std::uint64_t seed = 0;
  std::string cli_exe;  // binary path; enables the out-of-process determinism leg
};

// The release gate: seven self-contained criteria, each timed and reported
// individually. A criterion never throws — errors turn into failed results —
// so one broken area cannot mask the status of the others.
std::vector<CriterionResult> run_acceptance_battery(const BatteryOptions& options);

}  // namespace fptlab
