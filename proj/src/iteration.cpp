#include "fptlab/iteration.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "fptlab/errors.hpp"

namespace fptlab {

namespace {

void require_gamma(double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    throw InputError("gamma must lie in the open interval (0, 1)");
  }
}

// x + gamma (Tx - x); returning the displacement too saves a re-evaluation.
struct Step {
  Vector next;
  Vector image;     // T x
  double t_residual;  // |T x - x|
  double residual;  // |next - x|
};

Step averaged_step(const MappingSpec& map, double gamma, const Vector& x) {
  Step s{.next = {}, .image = map.evaluate(x), .t_residual = 0.0, .residual = 0.0};
  s.t_residual = distance(s.image, x);
  Vector d = sub(s.image, x);
  s.next = axpy(x, gamma, d);
  s.residual = distance(s.next, x);
  return s;
}

void require_attestation(double gamma, const ConditionReport& attestation) {
  if (attestation.condition != "C" && attestation.condition != "C_lambda") {
    throw PreconditionError(
        "residual monotonicity needs a C-family attestation, got condition '" +
        attestation.condition + "'");
  }
  if (attestation.verdict != ConditionVerdict::NoViolationFound) {
    throw PreconditionError("attestation report carries violations; refusing to certify");
  }
  if (!(attestation.lambda <= gamma)) {
    throw PreconditionError("attestation lambda exceeds gamma; the premise does not apply");
  }
}

}  // namespace

MappingSpec averaged_map(const MappingSpec& map, double gamma) {
  require_gamma(gamma);
  MappingSpec out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "averaged(%s, %.6g)", map.name.c_str(), gamma);
  out.name = buf;
  out.body = map.body;
  MappingSpec inner = map;
  out.rule = ClosureRule{[inner, gamma](const Vector& x) {
    Vector tx = inner.evaluate(x);
    return axpy(x, gamma, sub(tx, x));
  }};
  return out;
}

OrbitTrace orbit(const MappingSpec& map, double gamma, const Vector& x0, std::uint64_t steps) {
  require_gamma(gamma);
  if (steps == 0) throw InputError("orbit needs at least one step");
  if (!map.body.contains(x0, 1e-9)) throw InputError("orbit start lies outside the body");

  OrbitTrace trace;
  trace.gamma = gamma;
  trace.x0 = x0;
  trace.iterates.reserve(steps + 1);
  trace.residuals.reserve(steps);
  trace.t_residuals.reserve(steps + 1);

  trace.iterates.push_back(x0);
  for (std::uint64_t i = 0; i < steps; ++i) {
    Step s = averaged_step(map, gamma, trace.iterates.back());
    trace.t_residuals.push_back(s.t_residual);
    trace.residuals.push_back(s.residual);
    trace.iterates.push_back(std::move(s.next));
  }
  trace.t_residuals.push_back(distance(map.evaluate(trace.iterates.back()), trace.iterates.back()));
  return trace;
}

MonotonicityReport verify_residual_monotonicity(const OrbitTrace& trace,
                                                const ConditionReport& attestation) {
  require_attestation(trace.gamma, attestation);

  MonotonicityReport report;
  for (std::size_t i = 0; i + 1 < trace.residuals.size(); ++i) {
    const double increase = trace.residuals[i + 1] - trace.residuals[i];
    report.max_increase = std::max(report.max_increase, increase);
    if (increase > kTau && !report.first_failure) {
      report.monotone = false;
      report.first_failure = i;
    }
  }
  return report;
}

double verify_averaging_identity(const OrbitTrace& trace, const MappingSpec& map) {
  if (trace.iterates.size() < 2) throw InputError("trace too short");
  const double g = trace.gamma;

  // Mismatch guard: the stored t_residuals must reproduce under this map.
  std::vector<Vector> images;
  images.reserve(trace.iterates.size());
  for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
    images.push_back(map.evaluate(trace.iterates[i]));
    if (i < trace.t_residuals.size()) {
      const double t = distance(images.back(), trace.iterates[i]);
      if (std::fabs(t - trace.t_residuals[i]) > 1e-9) {
        throw InputError("trace does not belong to this mapping");
      }
    }
  }

  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < trace.iterates.size(); ++i) {
    Vector lhs = sub(trace.iterates[i + 1], trace.iterates[i]);
    lhs = scale(1.0 / g, lhs);
    Vector back = sub(trace.iterates[i], trace.iterates[i - 1]);
    lhs = axpy(lhs, -(1.0 - g) / g, back);
    const double yardstick = distance(images[i], images[i - 1]);
    worst = std::max(worst, std::fabs(norm(lhs) - yardstick));
  }
  return worst;
}

ARConstants ar_constants(double delta, double gamma) {
  require_gamma(gamma);
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InputError("delta must be positive");

  ARConstants c;
  c.m = static_cast<std::int64_t>(std::floor(2.0 / delta)) + 1;
  c.interval_width = static_cast<long double>(gamma) *
                     powl(1.0L - static_cast<long double>(gamma), static_cast<long double>(c.m));
  c.l = ceill(1.0L / c.interval_width);
  c.n0 = static_cast<long double>(c.m) * c.l + 1.0L;
  return c;
}

ARBound ar_bound(double delta, double gamma) {
  ARConstants c = ar_constants(delta, gamma);
  constexpr long double kMax = 9.2e18L;
  if (c.l > kMax || c.n0 > kMax) {
    throw InputError("bound constants exceed the integer range for these parameters");
  }
  ARBound b;
  b.delta = delta;
  b.gamma = gamma;
  b.m = static_cast<std::uint64_t>(c.m);
  b.l = static_cast<std::uint64_t>(c.l);
  // delta > 1 means the residual can never exceed delta * diam: nothing to wait for.
  b.n0 = delta > 1.0 ? 0 : static_cast<std::uint64_t>(c.n0);
  return b;
}

std::vector<Vector> afps_extract(const OrbitTrace& trace, double tol) {
  if (tol < 0.0) throw InputError("tolerance must be nonnegative");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < trace.t_residuals.size() && i < trace.iterates.size(); ++i) {
    if (trace.t_residuals[i] <= tol) out.push_back(trace.iterates[i]);
  }
  return out;
}

ARScanResult run_ar_scan(const MappingSpec& map, double gamma, const Vector& x0,
                         const std::vector<double>& thresholds, std::uint64_t step_cap) {
  require_gamma(gamma);
  if (!map.body.contains(x0, 1e-9)) throw InputError("orbit start lies outside the body");

  ARScanResult result;
  result.first_step_below.assign(thresholds.size(), std::nullopt);

  Vector x = x0;
  Vector prev_x;
  Vector prev_image;
  double prev_residual = std::numeric_limits<double>::infinity();
  bool have_prev = false;

  for (std::uint64_t i = 0; i < step_cap; ++i) {
    Step s = averaged_step(map, gamma, x);
    result.steps_taken = i + 1;
    result.final_residual = s.residual;

    if (s.residual > prev_residual + kTau) result.residuals_monotone = false;

    if (have_prev) {
      Vector lhs = scale(1.0 / gamma, sub(s.next, x));
      lhs = axpy(lhs, -(1.0 - gamma) / gamma, sub(x, prev_x));
      const double dev = std::fabs(norm(lhs) - distance(s.image, prev_image));
      result.max_identity_deviation = std::max(result.max_identity_deviation, dev);
    }

    bool all_found = true;
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
      if (!result.first_step_below[k] && s.residual < thresholds[k]) {
        result.first_step_below[k] = i;
      }
      if (!result.first_step_below[k]) all_found = false;
    }

    prev_residual = s.residual;
    prev_x = x;
    prev_image = s.image;
    have_prev = true;
    x = std::move(s.next);

    if (all_found) break;
  }
  return result;
}

void write_orbit_csv(const OrbitTrace& trace, std::ostream& out) {
  const std::size_t dim = trace.x0.coords.size();
  out << "step";
  for (std::size_t i = 0; i < dim; ++i) out << ",coord_" << i;
  out << ",residual,t_residual\n";

  char buf[40];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
    out << i;
    for (double c : trace.iterates[i].coords) out << ',' << fmt(c);
    out << ',';
    if (i < trace.residuals.size()) out << fmt(trace.residuals[i]);
    out << ',';
    if (i < trace.t_residuals.size()) out << fmt(trace.t_residuals[i]);
    out << '\n';
  }
}

}  // namespace fptlab
