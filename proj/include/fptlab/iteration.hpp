#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "fptlab/conditions.hpp"
#include "fptlab/mapping.hpp"
#include "fptlab/space.hpp"

namespace fptlab {

// Trace of the averaged iteration x_{i+1} = (1-gamma) x_i + gamma T x_i.
//
// iterates has steps+1 entries; residuals[i] = |x_{i+1} - x_i| (steps
// entries); t_residuals[i] = |T x_i - x_i| (steps+1 entries, so the last
// iterate is classified too). residuals[i] = gamma * t_residuals[i] within
// 1e-12 by construction.
struct OrbitTrace {
  double gamma = 0.5;
  Vector x0;
  std::vector<Vector> iterates;
  std::vector<double> residuals;
  std::vector<double> t_residuals;
};

// (1-gamma) I + gamma T on the same body. gamma outside (0,1) is an error.
MappingSpec averaged_map(const MappingSpec& map, double gamma);

// Deterministic eager orbit; identical inputs give bitwise identical traces.
OrbitTrace orbit(const MappingSpec& map, double gamma, const Vector& x0, std::uint64_t steps);

struct MonotonicityReport {
  bool monotone = true;
  std::optional<std::size_t> first_failure;
  double max_increase = 0.0;  // worst residual[i+1] - residual[i]
};

// Certifies residuals[i+1] <= residuals[i] + 1e-12 along the trace.
//
// Refuses to run (PreconditionError) without supporting evidence: the
// attestation must be a C-family report with verdict no_violation_found and
// lambda <= gamma. Residual monotonicity of the averaged orbit is a
// consequence of that premise, not an unconditional fact.
MonotonicityReport verify_residual_monotonicity(const OrbitTrace& trace,
                                                const ConditionReport& attestation);

// Max deviation over i >= 1 of
//   | |(1/g)(x_{i+1}-x_i) - ((1-g)/g)(x_i-x_{i-1})| - |T x_i - T x_{i-1}| |.
// The two sides agree identically in exact arithmetic, so the deviation is a
// pure floating-point health metric; the engine keeps it below 1e-10.
// Verifies the trace matches the map (via stored t_residuals) before use.
double verify_averaging_identity(const OrbitTrace& trace, const MappingSpec& map);

// Uniform step count after which every averaged orbit of a compatible map has
// residual below delta * diam:
//   M = smallest integer > 2/delta, L = ceil(1/(gamma (1-gamma)^M)),
//   n0 = M L + 1.
struct ARBound {
  double delta = 0.0;
  double gamma = 0.0;
  std::uint64_t m = 0;
  std::uint64_t l = 0;
  std::uint64_t n0 = 0;
};

// Same constants in long-double arithmetic; L and n0 can exceed any integer
// type for extreme (delta, gamma), so the wide form is what internal
// consumers compare against.
struct ARConstants {
  std::int64_t m = 0;
  long double interval_width = 0;  // gamma (1-gamma)^M
  long double l = 0;
  long double n0 = 0;
};

ARConstants ar_constants(double delta, double gamma);

// Integer-typed bound. delta > 1 returns n0 = 0 (residuals never exceed the
// diameter); constants beyond the uint64 range are an input error.
ARBound ar_bound(double delta, double gamma);

// Iterates with t_residuals[i] <= tol.
std::vector<Vector> afps_extract(const OrbitTrace& trace, double tol);

// Streaming scan of one averaged orbit, for soundness experiments whose n0 is
// far beyond anything storable. Records the first step at which the residual
// drops below each threshold, checks residual monotonicity (1e-12) and the
// averaging identity (above) on the fly, and stops once every threshold is
// reached or step_cap is hit.
struct ARScanResult {
  std::vector<std::optional<std::uint64_t>> first_step_below;
  bool residuals_monotone = true;
  double max_identity_deviation = 0.0;
  std::uint64_t steps_taken = 0;
  double final_residual = 0.0;
};

ARScanResult run_ar_scan(const MappingSpec& map, double gamma, const Vector& x0,
                         const std::vector<double>& thresholds, std::uint64_t step_cap);

// CSV dump: header then one row per iterate (step, coordinates, residual,
// t_residual). The final row has no residual.
void write_orbit_csv(const OrbitTrace& trace, std::ostream& out);

}  // namespace fptlab
