#include "fptlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fptlab/commands.hpp"
#include "fptlab/conditions.hpp"
#include "fptlab/errors.hpp"
#include "fptlab/geometry.hpp"
#include "fptlab/iteration.hpp"
#include "fptlab/ledger.hpp"
#include "fptlab/mapping.hpp"
#include "fptlab/rng.hpp"
#include "fptlab/serialize.hpp"

namespace fptlab {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string strf(const char* fmt, ...) {
  char buf[640];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

std::string join_names(const std::vector<std::string>& names) {
  if (names.empty()) return "none";
  std::string out;
  for (const std::string& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

template <typename Fn>
CriterionResult run_criterion(int id, std::string name, Fn&& fn) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  const auto t0 = Clock::now();
  try {
    fn(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("unexpected exception: ") + e.what();
  }
  r.millis = elapsed_ms(t0);
  return r;
}

// Shared workload of criteria 2 and 3: attest each zoo map, then scan the
// averaged orbits of every attested map streaming the soundness, monotonicity
// and identity checks together.
struct OrbitCampaign {
  bool ran = false;
  int zoo_size = 0;
  std::vector<std::string> attested;
  std::vector<std::string> refused;
  std::uint64_t orbits = 0;
  bool all_sound = true;
  bool all_monotone = true;
  double max_identity_deviation = 0.0;
  std::string first_violation;
  double millis = 0.0;
};

OrbitCampaign run_orbit_campaign(std::uint64_t seed) {
  OrbitCampaign c;
  const auto t0 = Clock::now();
  const std::vector<double> gammas{0.5, 0.75, 0.9};
  const std::vector<double> deltas{0.5, 0.25, 0.1};
  for (const MappingSpec& map : mapping_zoo()) {
    ++c.zoo_size;
    const std::vector<Vector> grid = lattice_grid(map.body, 0.01);
    const ConditionReport attestation = check_condition_c_lambda(map, 0.5, grid);
    if (attestation.verdict == ConditionVerdict::Violated) {
      c.refused.push_back(map.name);
      continue;
    }
    c.attested.push_back(map.name);
    const double diam = map.body.diameter();
    std::vector<double> thresholds;
    thresholds.reserve(deltas.size());
    for (double d : deltas) thresholds.push_back(d * diam);
    const std::uint64_t start_seed = RngStream(seed).derive("orbit-starts").derive(map.name).seed();
    const std::vector<Vector> starts = sample_body(map.body, 100, start_seed);
    for (double gamma : gammas) {
      std::vector<long double> n0s;
      n0s.reserve(deltas.size());
      for (double d : deltas) n0s.push_back(ar_constants(d, gamma).n0);
      for (const Vector& x0 : starts) {
        const ARScanResult scan = run_ar_scan(map, gamma, x0, thresholds, 200000);
        ++c.orbits;
        c.all_monotone = c.all_monotone && scan.residuals_monotone;
        c.max_identity_deviation =
            std::max(c.max_identity_deviation, scan.max_identity_deviation);
        for (std::size_t i = 0; i < deltas.size(); ++i) {
          // Residuals are monotone, so "residual at n0 below delta*diam" is
          // exactly "first step below delta*diam is at most n0" — and the
          // scan never has to walk anywhere near the astronomical n0 values.
          const bool found = scan.first_step_below[i].has_value();
          const bool sound =
              found && static_cast<long double>(*scan.first_step_below[i]) <= n0s[i];
          if (!sound) {
            c.all_sound = false;
            if (c.first_violation.empty()) {
              if (found) {
                c.first_violation =
                    strf("map=%s gamma=%g delta=%g first_step_below=%llu exceeds n0",
                         map.name.c_str(), gamma, deltas[i],
                         static_cast<unsigned long long>(*scan.first_step_below[i]));
              } else {
                c.first_violation =
                    strf("map=%s gamma=%g delta=%g never dropped below threshold in %llu steps",
                         map.name.c_str(), gamma, deltas[i],
                         static_cast<unsigned long long>(scan.steps_taken));
              }
            }
          }
        }
      }
    }
  }
  c.millis = elapsed_ms(t0);
  c.ran = true;
  return c;
}

// Subset test on lexicographically sorted violation lists, keyed by (x, y).
bool violations_subset(const std::vector<PairViolation>& small,
                       const std::vector<PairViolation>& big) {
  const auto key_less = [](const PairViolation& a, const PairViolation& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  };
  return std::includes(big.begin(), big.end(), small.begin(), small.end(), key_less);
}

std::string slurp_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<CriterionResult> run_acceptance_battery(const BatteryOptions& options) {
  std::vector<CriterionResult> results;

  results.push_back(run_criterion(1, "step-bound constants exact", [](CriterionResult& r) {
    const auto t0 = Clock::now();
    const ARBound a = ar_bound(0.5, 0.5);
    const ARBound b = ar_bound(0.25, 0.5);
    const double ms = elapsed_ms(t0);
    const bool exact = a.m == 5 && a.l == 64 && a.n0 == 321 && b.m == 9 && b.l == 1024 &&
                       b.n0 == 9217;
    r.passed = exact && ms < 1.0;
    r.detail = strf(
        "(delta=0.5,gamma=0.5)->{M:%llu,L:%llu,n0:%llu}; "
        "(delta=0.25,gamma=0.5)->{M:%llu,L:%llu,n0:%llu}; computed in %.4f ms",
        static_cast<unsigned long long>(a.m), static_cast<unsigned long long>(a.l),
        static_cast<unsigned long long>(a.n0), static_cast<unsigned long long>(b.m),
        static_cast<unsigned long long>(b.l), static_cast<unsigned long long>(b.n0), ms);
  }));

  OrbitCampaign campaign;
  results.push_back(run_criterion(
      2, "residual bound sound on attested zoo orbits", [&](CriterionResult& r) {
        campaign = run_orbit_campaign(options.seed);
        const bool time_ok = campaign.millis < 60000.0;
        r.passed = campaign.ran && campaign.all_sound && campaign.all_monotone &&
                   !campaign.attested.empty() && time_ok;
        if (!campaign.first_violation.empty()) {
          r.detail = campaign.first_violation;
        } else {
          r.detail = strf(
              "%zu/%d maps attested at step 0.01 (refused: %s); %llu orbits over "
              "gamma {0.5,0.75,0.9} x 100 starts sound for delta {0.5,0.25,0.1} in %.0f ms",
              campaign.attested.size(), campaign.zoo_size, join_names(campaign.refused).c_str(),
              static_cast<unsigned long long>(campaign.orbits), campaign.millis);
        }
      }));

  results.push_back(run_criterion(3, "orbit identities within tolerance", [&](CriterionResult& r) {
    if (!campaign.ran || campaign.orbits == 0) {
      r.passed = false;
      r.detail = "orbit campaign unavailable";
      return;
    }
    r.passed = campaign.all_monotone && campaign.max_identity_deviation <= 1e-10;
    r.detail = strf(
        "%llu orbits: residuals monotone within 1e-12 slack %s; max averaging-identity "
        "deviation %.3e (tolerance 1e-10)",
        static_cast<unsigned long long>(campaign.orbits), campaign.all_monotone ? "yes" : "NO",
        campaign.max_identity_deviation);
  }));

  results.push_back(run_criterion(4, "condition checkers discriminate", [](CriterionResult& r) {
    const MappingSpec thr = zoo_map("interval_threshold");
    const std::vector<Vector> grid = lattice_grid(thr.body, 0.005);

    const ConditionReport c_half = check_condition_c_lambda(thr, 0.5, grid);
    const bool c_ok =
        c_half.verdict == ConditionVerdict::NoViolationFound && c_half.violations.empty();

    const ConditionReport ne = check_nonexpansive(thr, grid);
    const bool ne_ok = ne.verdict == ConditionVerdict::Violated && !ne.violations.empty();

    const std::vector<double> lambdas{0.1, 0.25, 0.5, 0.75, 0.9};
    std::vector<ConditionReport> by_lambda;
    by_lambda.reserve(lambdas.size());
    for (double lam : lambdas) by_lambda.push_back(check_condition_c_lambda(thr, lam, grid));
    bool subset_ok = true;
    for (std::size_t i = 0; i + 1 < by_lambda.size(); ++i) {
      // Larger lambda weakens the premise, so its violation set must shrink.
      subset_ok =
          subset_ok && violations_subset(by_lambda[i + 1].violations, by_lambda[i].violations);
    }

    bool scale_ok = true;
    const ConditionReport base_q = by_lambda[1];  // lambda = 0.25: nonempty violations
    for (double rr : {0.5, 3.0}) {
      const MappingSpec scaled = rescale_map(thr, rr);
      std::vector<Vector> sgrid;
      sgrid.reserve(grid.size());
      for (const Vector& v : grid) {
        std::vector<double> coords = v.coords;
        for (double& x : coords) x /= rr;
        sgrid.push_back(make_vector(scaled.body.space, std::move(coords)));
      }
      for (double lam : {0.25, 0.5}) {
        const ConditionReport& base = lam == 0.25 ? base_q : c_half;
        const ConditionReport srep = check_condition_c_lambda(scaled, lam, sgrid);
        scale_ok = scale_ok && srep.verdict == base.verdict &&
                   srep.violations.size() == base.violations.size();
        if (!scale_ok) break;
        for (std::size_t k = 0; k < srep.violations.size(); ++k) {
          const PairViolation& sv = srep.violations[k];
          const PairViolation& bv = base.violations[k];
          const bool pair_matches = std::fabs(sv.x[0] - bv.x[0] / rr) <= 1e-9 &&
                                    std::fabs(sv.y[0] - bv.y[0] / rr) <= 1e-9 &&
                                    std::fabs(sv.lhs - bv.lhs / rr) <= 1e-9 &&
                                    std::fabs(sv.rhs - bv.rhs / rr) <= 1e-9;
          if (!pair_matches) {
            scale_ok = false;
            break;
          }
        }
      }
      if (!scale_ok) break;
    }

    r.passed = c_ok && ne_ok && subset_ok && scale_ok;
    const PairViolation* witness = ne.violations.empty() ? nullptr : &ne.violations.front();
    r.detail = strf(
        "step 0.005: C_{1/2} clean over %llu pairs %s; nonexpansive violated %s (witness "
        "x=%.6g y=%.6g lhs=%.6g rhs=%.6g); lambda-subsets %s; scaling r={0.5,3} %s",
        static_cast<unsigned long long>(c_half.pairs_checked), c_ok ? "yes" : "NO",
        ne_ok ? "yes" : "NO", witness ? witness->x[0] : 0.0, witness ? witness->y[0] : 0.0,
        witness ? witness->lhs : 0.0, witness ? witness->rhs : 0.0, subset_ok ? "hold" : "FAIL",
        scale_ok ? "match" : "FAIL");
  }));

  results.push_back(run_criterion(5, "geometric constants match closed forms",
                                  [&](CriterionResult& r) {
    const auto t0 = Clock::now();
    const SpaceDescriptor p2 = SpaceDescriptor::lp(2.0, 2);
    const SpaceDescriptor l1 = SpaceDescriptor::lp(1.0, 2);
    const SpaceDescriptor li = SpaceDescriptor::sup(2);

    const ModulusEstimate j2 = james_constant(p2, 360, options.seed);
    const ModulusEstimate j1 = james_constant(l1, 360, options.seed);
    const ModulusEstimate ji = james_constant(li, 360, options.seed);
    const ModulusEstimate r_one = r_coefficient(p2, 1.0);
    const std::vector<double> a_grid = uniform_grid(0.0, 4.0, 0.01);
    const ModulusEstimate m2 = m_coefficient(p2, a_grid);
    const ModulusEstimate mw2 = mw_coefficient(p2, a_grid);
    const double cross = r_from_b1_crosscheck(p2, 1.0, 1e-3);
    const ScalarMaximum opt = maximize_scalar(
        [&](double a) { return (1.0 + a) / *r_coefficient(p2, a).value; }, 0.0, 4.0, 0.01);
    const RCoefficientEquivalence eq_p2 = r_coefficient_equivalence(p2, a_grid);
    const RCoefficientEquivalence eq_sup = r_coefficient_equivalence(li, a_grid);
    const double ms = elapsed_ms(t0);

    const bool ok = std::fabs(*j2.value - 1.414214) <= 1e-3 && *j1.value == 2.0 &&
                    !j1.witness.empty() && *ji.value == 2.0 && !ji.witness.empty() &&
                    std::fabs(*r_one.value - 1.224745) <= 1e-6 &&
                    std::fabs(*m2.value - 1.732051) <= 1e-3 &&
                    std::fabs(*mw2.value - 1.414214) <= 1e-3 &&
                    std::fabs(cross - *r_one.value) <= 1e-6 &&
                    std::fabs(opt.value - *m2.value) <= 1e-6 && eq_p2.consistent &&
                    eq_sup.consistent && ms < 30000.0;
    r.passed = ok;
    r.detail = strf(
        "J(l2^2)=%.7f J(l1^2)=%g J(sup^2)=%g R(1)=%.7f M=%.7f MW=%.7f b1-crosscheck=%.7f "
        "optimizer-M=%.7f equivalence(p2,sup)=%s,%s in %.0f ms",
        *j2.value, *j1.value, *ji.value, *r_one.value, *m2.value, *mw2.value, cross, opt.value,
        eq_p2.consistent ? "ok" : "FAIL", eq_sup.consistent ? "ok" : "FAIL", ms);
  }));

  results.push_back(run_criterion(6, "entailment sweeps clean", [&](CriterionResult& r) {
    const auto t0 = Clock::now();
    bool sweeps_ok = true;
    std::string note;
    std::uint64_t total_hits = 0;
    for (const std::string& name : ledger_check_names()) {
      const EntailmentReport rep = sweep_check(name, 10000, options.seed);
      total_hits += rep.premise_hits;
      const bool good = rep.verdict == EntailmentVerdict::HoldsOnSamples &&
                        rep.premise_hits >= 1 && rep.violations.empty() && !rep.degenerate;
      if (!good && note.empty()) {
        note = strf("; first failure %s: %s with %zu violations", name.c_str(),
                    entailment_verdict_name(rep.verdict), rep.violations.size());
      }
      sweeps_ok = sweeps_ok && good;
    }
    double max_dev = 0.0;
    for (double eps : {0.01, 0.05, 0.1}) {
      for (double rr : {1.0, 7.5}) {
        const auto [upper, lower] = scaling_chain_values(rr, eps);
        max_dev = std::max(max_dev, std::fabs(upper - (2.0 - 8.0 * eps)));
        max_dev = std::max(max_dev, std::fabs(lower - (1.0 + 8.0 * eps)));
      }
    }
    const double ms = elapsed_ms(t0);
    r.passed = sweeps_ok && max_dev <= 1e-12 && ms < 10000.0;
    r.detail = strf(
        "5 sweeps x 10000 samples, %llu premise hits, zero violations%s; chain identities "
        "max deviation %.3e at eps {0.01,0.05,0.1}; %.0f ms",
        static_cast<unsigned long long>(total_hits), note.c_str(), max_dev, ms);
  }));

  results.push_back(run_criterion(7, "reports byte-identical across reruns",
                                  [&](CriterionResult& r) {
    std::vector<RunConfig> configs;
    {
      RunConfig c;
      c.command = "ar-bound";
      configs.push_back(c);
    }
    {
      RunConfig c;
      c.command = "check-condition";
      c.map_name = "interval_threshold";
      c.lambda = 0.25;
      c.step = 0.01;
      configs.push_back(c);
    }
    {
      RunConfig c;
      c.command = "iterate";
      c.map_name = "contraction_half";
      c.gamma = 0.75;
      c.steps = 200;
      configs.push_back(c);
    }
    {
      RunConfig c;
      c.command = "moduli";
      configs.push_back(c);
    }
    {
      RunConfig c;
      c.command = "ledger";
      c.check = "eta-window";
      c.samples = 2000;
      configs.push_back(c);
    }
    bool in_process_ok = true;
    std::string which;
    for (const RunConfig& cfg : configs) {
      const CommandResult first = execute_command(cfg);
      const CommandResult second = execute_command(cfg);
      if (first.report.dump() != second.report.dump()) {
        in_process_ok = false;
        which = cfg.command;
        break;
      }
    }

    bool binary_ok = true;
    std::string binary_note = "binary leg skipped (no path provided)";
    if (!options.cli_exe.empty()) {
      namespace fs = std::filesystem;
      const fs::path dir = fs::temp_directory_path();
      const fs::path f1 = dir / "fptlab_determinism_a.json";
      const fs::path f2 = dir / "fptlab_determinism_b.json";
      const std::string base =
          "\"" + options.cli_exe + "\" moduli --eps 0.1 --argument 1 --seed 0";
      const auto run_to = [&](const fs::path& f) {
        const std::string cmd = base + " > \"" + f.string() + "\" 2>/dev/null";
        return std::system(cmd.c_str()) == 0;
      };
      binary_ok = run_to(f1) && run_to(f2);
      if (binary_ok) {
        const std::string s1 = slurp_file(f1);
        const std::string s2 = slurp_file(f2);
        binary_ok = !s1.empty() && s1 == s2;
        binary_note = binary_ok ? strf("binary stdout byte-identical (%zu bytes)", s1.size())
                                : "binary stdout differs between runs";
      } else {
        binary_note = "binary invocation failed";
      }
      std::error_code ec;
      fs::remove(f1, ec);
      fs::remove(f2, ec);
    }

    r.passed = in_process_ok && binary_ok;
    r.detail = in_process_ok
                   ? strf("5 commands re-run in-process byte-identical; %s", binary_note.c_str())
                   : strf("in-process rerun differs for command '%s'", which.c_str());
  }));

  return results;
}

}  // namespace fptlab
