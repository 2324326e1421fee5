#pragma once

#include <string>

#include <json.hpp>

#include "fptlab/config.hpp"

namespace fptlab {

// Exit discipline: 0 = clean pass, 1 = a checked property is violated,
// 2 = input/config/premise error (raised as InputError/PreconditionError and
// mapped by the caller).
struct CommandResult {
  int exit_code = 0;
  nlohmann::json report;  // deterministic artifact: same config, same bytes
  std::string console;    // human status incl. wall-clock timing; never in the report
};

// Runs one command. `cli_exe` is the path of the installed binary, used only
// by the suite's determinism criterion to re-run a command out of process;
// empty skips that leg.
CommandResult execute_command(const RunConfig& cfg, const std::string& cli_exe = "");

}  // namespace fptlab
