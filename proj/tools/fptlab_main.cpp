#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <utility>

#include <json.hpp>

#include "fptlab/body.hpp"
#include "fptlab/commands.hpp"
#include "fptlab/errors.hpp"
#include "fptlab/iteration.hpp"
#include "fptlab/mapping.hpp"

// Exit codes: 0 clean, 1 a checked property is violated, 2 input/config error.
// The JSON report goes to stdout (or --out); human status and timing go to
// stderr, so piping stdout always yields the byte-stable artifact.

int main(int argc, char** argv) {
  CLI::App app{
      "Verification lab: grid condition checks, averaged orbits, geometric "
      "constants and entailment sweeps for generalized nonexpansive mappings"};

  std::string config_path;
  std::string out_path;
  std::string csv_path;
  fptlab::RunConfig flags;

  app.add_option("--config", config_path, "JSON config file; explicit flags override it");
  app.add_option("--out", out_path, "write the JSON report to this file instead of stdout");
  app.add_option("--csv", csv_path, "iterate only: also write the orbit trace as CSV");
  app.add_option("--seed", flags.seed, "root RNG seed (default 0)");
  app.add_option("--map", flags.map_name, "zoo map name (see README)");
  app.add_option("--condition", flags.condition, "C_lambda | nonexpansive");
  app.add_option("--lambda", flags.lambda, "premise coefficient in (0,1); 0.5 is condition (C)");
  app.add_option("--gamma", flags.gamma, "averaging weight in (0,1)");
  app.add_option("--delta", flags.delta, "residual threshold factor for ar-bound");
  app.add_option("--eps", flags.eps, "modulus argument eps");
  app.add_option("--p", flags.p, "norm exponent, >= 1");
  app.add_option("--dimension", flags.dimension, "space dimension");
  app.add_option("--norm-kind", flags.norm_kind, "p_norm | sup_norm");
  app.add_option("--step", flags.step, "lattice step for grid checks");
  app.add_option("--argument", flags.argument, "a for the R/RW coefficients");
  app.add_option("--samples", flags.samples, "sweep sample count");
  app.add_option("--steps", flags.steps, "orbit length");
  app.add_option("--check", flags.check, "ledger check name (default: all five)");
  app.add_option("--modulus", flags.modulus, "moduli selection (default: all)");

  app.require_subcommand(1);
  const std::pair<const char*, const char*> subcommands[] = {
      {"check-condition", "grid-check nonexpansiveness or C_lambda on a zoo map"},
      {"iterate", "run the averaged orbit and report residual diagnostics"},
      {"ar-bound", "compute the uniform residual step bound {M, L, n0}"},
      {"moduli", "closed-form geometric moduli and searched constants"},
      {"ledger", "randomized entailment sweeps over the built-in checks"},
      {"suite", "run the full acceptance battery"}};
  for (const auto& [name, help] : subcommands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    fptlab::RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw fptlab::InputError("cannot open config file: " + config_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw fptlab::InputError(std::string("config file is not valid JSON: ") + e.what());
      }
      cfg = fptlab::apply_config_json(cfg, j);
    }
    if (app.count("--seed")) cfg.seed = flags.seed;
    if (app.count("--map")) cfg.map_name = flags.map_name;
    if (app.count("--condition")) cfg.condition = flags.condition;
    if (app.count("--lambda")) cfg.lambda = flags.lambda;
    if (app.count("--gamma")) cfg.gamma = flags.gamma;
    if (app.count("--delta")) cfg.delta = flags.delta;
    if (app.count("--eps")) cfg.eps = flags.eps;
    if (app.count("--p")) cfg.p = flags.p;
    if (app.count("--dimension")) cfg.dimension = flags.dimension;
    if (app.count("--norm-kind")) cfg.norm_kind = flags.norm_kind;
    if (app.count("--step")) cfg.step = flags.step;
    if (app.count("--argument")) cfg.argument = flags.argument;
    if (app.count("--samples")) cfg.samples = flags.samples;
    if (app.count("--steps")) cfg.steps = flags.steps;
    if (app.count("--check")) cfg.check = flags.check;
    if (app.count("--modulus")) cfg.modulus = flags.modulus;
    cfg.command = app.get_subcommands().front()->get_name();

    const fptlab::CommandResult result = fptlab::execute_command(cfg, argv[0]);

    if (!out_path.empty()) {
      std::ofstream out(out_path);
      if (!out) throw fptlab::InputError("cannot open report path: " + out_path);
      out << result.report.dump(2) << "\n";
    } else {
      std::cout << result.report.dump(2) << "\n";
    }
    std::cerr << result.console;

    if (!csv_path.empty()) {
      if (cfg.command != "iterate") {
        throw fptlab::InputError("--csv applies only to the iterate command");
      }
      // Rebuild the (deterministic) trace; the report path stays trace-free.
      const fptlab::MappingSpec map = fptlab::zoo_map(cfg.map_name);
      const fptlab::Vector x0 = fptlab::sample_body(map.body, 1, cfg.seed).front();
      const fptlab::OrbitTrace trace = fptlab::orbit(map, cfg.gamma, x0, cfg.steps);
      std::ofstream csv(csv_path);
      if (!csv) throw fptlab::InputError("cannot open csv path: " + csv_path);
      fptlab::write_orbit_csv(trace, csv);
    }
    return result.exit_code;
  } catch (const fptlab::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
