#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fptlab/rng.hpp"

namespace fptlab {

// One evaluation of an entailment at a concrete parameter point. `premise`
// false means the sample is vacuous (it never counts against the claim);
// `holds` is meaningful only when the premise is satisfied. lhs/rhs echo the
// decisive comparison so a reported violation can be replayed by hand.
struct CheckOutcome {
  bool premise = false;
  bool holds = true;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string detail;
  std::vector<std::pair<std::string, double>> metrics;
};

enum class EntailmentVerdict { HoldsOnSamples, Violated, PremiseNeverSatisfied };

struct SampleViolation {
  std::uint64_t sample_index = 0;
  std::map<std::string, double> params;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string detail;
};

struct EntailmentReport {
  std::string name;
  std::string region;  // human description of the sampled parameter region
  std::uint64_t samples = 0;
  std::uint64_t premise_hits = 0;
  std::vector<SampleViolation> violations;
  EntailmentVerdict verdict = EntailmentVerdict::PremiseNeverSatisfied;
  bool degenerate = false;  // 10^4 consecutive draws without a premise hit
};

const char* entailment_verdict_name(EntailmentVerdict v);

// --- Pointwise checks ------------------------------------------------------

// Step-count constants: M = floor(2/delta) + 1, interval width
// w = gamma (1-gamma)^M, L = ceil(1/w), n0 = M L + 1. Asserts interval
// coverage (L w >= 1), the pigeonhole step (L+1 marks into L intervals
// collide; simulated for small L), M delta > 2, and the geometric series
// bound (1-gamma)(1 - (1-gamma)^{M-1}) <= 1. Compiled with exact-rational
// support, the inequalities are decided in exact arithmetic and the
// floating-point path is cross-checked against them.
CheckOutcome ar_constants_check(double delta, double gamma);

// Step bands: with eps < 1/(10 n), 2/3 + 2 n eps < t < 1 - 2 eps and
// lambda <= gamma < 1, every k in 0..n-1 admits a nonempty band
// (2(1-t) + eps, t - (k+3) eps) with all intermediate gaps strict.
CheckOutcome iterate_band_check(double eps, double t, int n, double lambda, double gamma);

// Tuning window: for eps > 0, 2/3 < t < 1, n >= 1 the window
// (0, min{1/(3(n+2)), eps/n, (t - 2/3)/n, (1-t)/2}) is nonempty.
CheckOutcome eta_window_check(double eps, double t, int n);

// Scaling chain at radius r: the normalized upper chain equals 2 - 8 eps and
// the lower chain 1 + 8 eps (both to 1e-12), the two are strictly ordered for
// eps < 1/16, any z_norm in [r(1-eps)/4, r(1+eps)/4] lands in the
// |4 z / r - 1| <= 4 eps window, and shrinking eps by the gap factor 8
// reproduces the 2 - eps / 1 + eps endpoints.
CheckOutcome moduli_chain_check(double r, double eps, double z_norm);

// Raw chain arithmetic at radius r, no premises: (upper, lower) normalized
// scaling-chain values, algebraically 2 - 8 eps and 1 + 8 eps. Exposed so the
// identities can be audited at eps values outside the ordered-chain region
// (the ordering itself needs eps < 1/16; the identities do not).
std::pair<double, double> scaling_chain_values(double r, double eps);

// Coefficient chain: lim_f > 1 - eta min(1, a) and f_x > a - eta min(1, a)
// force lim_f + (b/a) f_x > (1 + b)(1 - eta). The boundary point with both
// premises at equality is excluded by the strict premises.
CheckOutcome coefficient_chain_check(double a, double b, double eta, double lim_f, double f_x);

// --- Sweeps -----------------------------------------------------------------

// Randomized sweep over a parameter region. Sampling is per-index derived
// from (seed, name, sample index), so results are independent of execution
// order. A run of 10^4 consecutive vacuous samples aborts the sweep with the
// degenerate flag set: the region is then considered mis-specified.
template <typename Sampler, typename Check>
EntailmentReport sweep_entailment(std::string name, std::string region, std::uint64_t samples,
                                  std::uint64_t seed, Sampler&& sampler, Check&& check) {
  EntailmentReport report;
  report.name = std::move(name);
  report.region = std::move(region);
  report.samples = samples;
  const RngStream base = RngStream(seed).derive(report.name);
  std::uint64_t consecutive_misses = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    RngStream rng = base.derive(i);
    const std::map<std::string, double> params = sampler(rng);
    const CheckOutcome outcome = check(params);
    if (!outcome.premise) {
      if (++consecutive_misses >= 10000) {
        report.degenerate = true;
        break;
      }
      continue;
    }
    consecutive_misses = 0;
    ++report.premise_hits;
    if (!outcome.holds) {
      SampleViolation v;
      v.sample_index = i;
      v.params = params;
      v.lhs = outcome.lhs;
      v.rhs = outcome.rhs;
      v.detail = outcome.detail;
      report.violations.push_back(std::move(v));
    }
  }
  if (report.premise_hits == 0) {
    report.verdict = EntailmentVerdict::PremiseNeverSatisfied;
  } else if (!report.violations.empty()) {
    report.verdict = EntailmentVerdict::Violated;
  } else {
    report.verdict = EntailmentVerdict::HoldsOnSamples;
  }
  return report;
}

// Named sweeps over the five built-in checks.
std::vector<std::string> ledger_check_names();
EntailmentReport sweep_check(const std::string& name, std::uint64_t samples, std::uint64_t seed);

}  // namespace fptlab
