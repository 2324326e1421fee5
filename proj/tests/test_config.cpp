#include <doctest.h>

#include <json.hpp>
#include <string>

#include "fptlab/commands.hpp"
#include "fptlab/config.hpp"
#include "fptlab/errors.hpp"

using namespace fptlab;
using nlohmann::json;

TEST_CASE("config json overrides defaults and round-trips") {
  RunConfig base;
  const auto cfg = apply_config_json(
      base, json{{"seed", 42}, {"lambda", 0.25}, {"map", "two_point_snap"},
                 {"condition", "nonexpansive"}, {"steps", 50}});
  CHECK(cfg.seed == 42);
  CHECK(cfg.lambda == 0.25);
  CHECK(cfg.map_name == "two_point_snap");
  CHECK(cfg.condition == "nonexpansive");
  CHECK(cfg.steps == 50);
  // untouched fields keep their defaults
  CHECK(cfg.gamma == 0.5);
  CHECK(cfg.step == 0.01);

  // feeding a config's own dump back reproduces it
  const auto again = apply_config_json(RunConfig{}, to_json(cfg));
  CHECK(to_json(again).dump() == to_json(cfg).dump());
}

TEST_CASE("unknown or ill-typed config keys are refused") {
  CHECK_THROWS_AS(apply_config_json(RunConfig{}, json{{"lamda", 0.25}}), InputError);
  CHECK_THROWS_AS(apply_config_json(RunConfig{}, json{{"lambda", "big"}}), InputError);
  CHECK_THROWS_AS(apply_config_json(RunConfig{}, json::parse("[1,2]")), InputError);
}

TEST_CASE("ar-bound command emits the standard envelope") {
  RunConfig cfg;
  cfg.command = "ar-bound";
  const auto r = execute_command(cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.report["schema_version"] == 1);
  CHECK(r.report["library_version"].is_string());
  CHECK(r.report["command"] == "ar-bound");
  // the fully resolved config is embedded for reproduction
  CHECK(r.report["config"]["seed"] == 0);
  CHECK(r.report["config"]["delta"] == 0.5);
  CHECK(r.report["result"]["M"] == 5);
  CHECK(r.report["result"]["L"] == 64);
  CHECK(r.report["result"]["n0"] == 321);
  // timing lives in the console stream, never in the report artifact
  CHECK(r.report.dump().find("duration") == std::string::npos);
  CHECK(r.console.find("ms") != std::string::npos);
}

TEST_CASE("violated condition checks exit 1 and carry witnesses") {
  RunConfig cfg;
  cfg.command = "check-condition";
  cfg.condition = "nonexpansive";
  cfg.map_name = "interval_threshold";
  cfg.step = 0.25;
  const auto r = execute_command(cfg);
  CHECK(r.exit_code == 1);
  CHECK(r.report["result"]["report"]["verdict"] == "violated");
  CHECK(r.report["result"]["report"]["violations"].size() == 6);

  cfg.condition = "C_lambda";
  cfg.lambda = 0.5;
  const auto clean = execute_command(cfg);
  CHECK(clean.exit_code == 0);
  CHECK(clean.report["result"]["report"]["verdict"] == "no_violation_found");
}

TEST_CASE("iterate command reports residual decay") {
  RunConfig cfg;
  cfg.command = "iterate";
  cfg.map_name = "contraction_half";
  cfg.gamma = 0.5;
  cfg.steps = 100;
  const auto r = execute_command(cfg);
  CHECK(r.exit_code == 0);
  const auto& result = r.report["result"];
  CHECK(result["final_t_residual"].is_number());
  CHECK(result["final_t_residual"].get<double>() < 1e-6);
  CHECK(result["identity_deviation"].get<double>() <= 1e-10);
  CHECK(result["residuals"].size() == 100);
}

TEST_CASE("moduli command computes the requested modulus only") {
  RunConfig cfg;
  cfg.command = "moduli";
  cfg.modulus = "J";
  cfg.p = 2.0;
  cfg.dimension = 2;
  const auto r = execute_command(cfg);
  CHECK(r.exit_code == 0);
  REQUIRE(r.report["result"]["estimates"].size() == 1);
  CHECK(r.report["result"]["estimates"][0]["modulus"] == "J");

  cfg.modulus = "nonexistent";
  CHECK_THROWS_AS(execute_command(cfg), InputError);
}

TEST_CASE("ledger command aggregates the five sweeps") {
  RunConfig cfg;
  cfg.command = "ledger";
  cfg.samples = 200;
  const auto r = execute_command(cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.report["result"]["reports"].size() == 5);
  for (const auto& c : r.report["result"]["reports"]) {
    CHECK(c["verdict"] == "holds_on_samples");
  }

  cfg.check = "eta-window";
  const auto single = execute_command(cfg);
  CHECK(single.report["result"]["reports"].size() == 1);
  CHECK(single.report["result"]["reports"][0]["name"] == "eta-window");
}

TEST_CASE("reports are byte-identical across repeated in-process runs") {
  RunConfig cfg;
  cfg.command = "moduli";
  cfg.modulus = "all";
  cfg.eps = 0.1;
  const auto a = execute_command(cfg);
  const auto b = execute_command(cfg);
  CHECK(a.report.dump() == b.report.dump());

  RunConfig lcfg;
  lcfg.command = "ledger";
  lcfg.check = "moduli-chain";
  lcfg.samples = 500;
  CHECK(execute_command(lcfg).report.dump() == execute_command(lcfg).report.dump());
}

TEST_CASE("unknown commands and maps are input errors") {
  RunConfig cfg;
  cfg.command = "frobnicate";
  CHECK_THROWS_AS(execute_command(cfg), InputError);

  cfg.command = "iterate";
  cfg.map_name = "no_such_map";
  CHECK_THROWS_AS(execute_command(cfg), InputError);
}
