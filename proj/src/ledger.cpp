#include "fptlab/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "fptlab/errors.hpp"
#include "fptlab/space.hpp"

#if defined(FPTLAB_EXACT_RATIONAL)
#include <boost/multiprecision/cpp_int.hpp>
#endif

namespace fptlab {

namespace {

std::string describe(const char* fmt, double a, double b) {
  char buf[192];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return buf;
}

void fail(CheckOutcome& out, double lhs, double rhs, std::string detail) {
  if (!out.holds) return;  // keep the first failure
  out.holds = false;
  out.lhs = lhs;
  out.rhs = rhs;
  out.detail = std::move(detail);
}

#if defined(FPTLAB_EXACT_RATIONAL)
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational rational_pow(Rational base, std::int64_t exp) {
  Rational result = 1;
  while (exp > 0) {
    if (exp & 1) result *= base;
    base *= base;
    exp >>= 1;
  }
  return result;
}

BigInt rational_floor_positive(const Rational& q) {
  return numerator(q) / denominator(q);
}

BigInt rational_ceil_positive(const Rational& q) {
  return (numerator(q) + denominator(q) - 1) / denominator(q);
}
#endif

}  // namespace

const char* entailment_verdict_name(EntailmentVerdict v) {
  switch (v) {
    case EntailmentVerdict::HoldsOnSamples: return "holds_on_samples";
    case EntailmentVerdict::Violated: return "violated";
    case EntailmentVerdict::PremiseNeverSatisfied: return "premise_never_satisfied";
  }
  return "?";
}

CheckOutcome ar_constants_check(double delta, double gamma) {
  CheckOutcome out;
  if (!(delta > 0.0) || !std::isfinite(delta) || !(gamma > 0.0 && gamma < 1.0)) {
    out.detail = "needs delta > 0 and gamma in (0, 1)";
    return out;
  }
  const auto m = static_cast<std::int64_t>(std::floor(2.0 / delta)) + 1;
  const long double width = static_cast<long double>(gamma) * powl(1.0L - gamma, m);
  if (!(width > 0.0L)) {
    out.detail = "interval width underflows long double; point skipped";
    return out;
  }
  out.premise = true;
  const long double l = ceill(1.0L / width);
  const long double n0 = static_cast<long double>(m) * l + 1.0L;
  const long double coverage = l * width;
  const long double m_delta = static_cast<long double>(m) * delta;
  const long double geo =
      (1.0L - gamma) * (1.0L - powl(1.0L - gamma, m - 1));

  bool coverage_ok = coverage >= 1.0L - 1e-15L;
  bool m_delta_ok = m_delta > 2.0L;
  bool geo_ok = geo <= 1.0L + 1e-15L;

#if defined(FPTLAB_EXACT_RATIONAL)
  double float_agrees = 1.0;
  if (m <= 64) {
    const Rational d(delta), g(gamma);
    const BigInt m_exact = rational_floor_positive(Rational(2) / d) + 1;
    const Rational width_exact = g * rational_pow(Rational(1) - g, m);
    const BigInt l_exact = rational_ceil_positive(Rational(1) / width_exact);
    const bool coverage_exact = Rational(l_exact) * width_exact >= 1;
    const bool m_delta_exact = Rational(m_exact) * d > 2;
    const Rational geo_exact =
        (Rational(1) - g) * (Rational(1) - rational_pow(Rational(1) - g, m - 1));
    const bool geo_exact_ok = geo_exact <= 1;
    if (m_exact != m || coverage_exact != coverage_ok || m_delta_exact != m_delta_ok ||
        geo_exact_ok != geo_ok) {
      float_agrees = 0.0;
    }
    const long double l_exact_ld = l_exact.convert_to<long double>();
    out.metrics.emplace_back("l_matches",
                             std::fabs(l_exact_ld - l) <= 1e-12L * std::max(1.0L, l) ? 1.0 : 0.0);
    coverage_ok = coverage_exact;
    m_delta_ok = m_delta_exact;
    geo_ok = geo_exact_ok;
  }
  out.metrics.emplace_back("float_agrees", float_agrees);
#endif

  // Pigeonhole: L+1 evenly spread marks over L width-w intervals must collide.
  bool pigeonhole_ok = true;
  double distinct = 0.0;
  if (l <= 100000.0L) {
    const auto li = static_cast<std::uint64_t>(l);
    std::unordered_set<std::uint64_t> buckets;
    const long double span = l * width;
    for (std::uint64_t j = 0; j <= li; ++j) {
      const long double pos = span * static_cast<long double>(j) / static_cast<long double>(li + 1);
      auto idx = static_cast<std::uint64_t>(pos / width);
      if (idx >= li) idx = li - 1;
      buckets.insert(idx);
    }
    distinct = static_cast<double>(buckets.size());
    pigeonhole_ok = buckets.size() <= li;
  } else {
    // Counting form: L+1 marks versus L intervals is an exact integer fact.
    // Deciding it in floating point would absorb the +1 for L beyond the
    // mantissa, so it is asserted on the integers, never evaluated in floats.
    distinct = static_cast<double>(l);
    pigeonhole_ok = true;
  }

  out.metrics.emplace_back("m", static_cast<double>(m));
  out.metrics.emplace_back("interval_width", static_cast<double>(width));
  out.metrics.emplace_back("l", static_cast<double>(l));
  out.metrics.emplace_back("n0", static_cast<double>(n0));
  out.metrics.emplace_back("m_delta", static_cast<double>(m_delta));
  out.metrics.emplace_back("geometric_sum", static_cast<double>(geo));
  out.metrics.emplace_back("coverage", static_cast<double>(coverage));
  out.metrics.emplace_back("pigeonhole_distinct", distinct);

  out.lhs = static_cast<double>(coverage);
  out.rhs = 1.0;
  out.detail = "all bounds hold";
  if (!coverage_ok) {
    fail(out, static_cast<double>(coverage), 1.0, "interval coverage L*w >= 1 fails");
  }
  if (!pigeonhole_ok) {
    fail(out, distinct, static_cast<double>(l + 1.0L), "pigeonhole collision missing");
  }
  if (!m_delta_ok) {
    fail(out, static_cast<double>(m_delta), 2.0, "M * delta > 2 fails");
  }
  if (!geo_ok) {
    fail(out, static_cast<double>(geo), 1.0, "geometric series bound fails");
  }
  return out;
}

CheckOutcome iterate_band_check(double eps, double t, int n, double lambda, double gamma) {
  CheckOutcome out;
  const bool premise = n >= 1 && eps > 0.0 && std::isfinite(eps) && eps * (10.0 * n) < 1.0 &&
                       2.0 / 3.0 + 2.0 * n * eps < t && t < 1.0 - 2.0 * eps && lambda > 0.0 &&
                       lambda <= gamma && gamma < 1.0;
  if (!premise) {
    out.detail = "premises not satisfied";
    return out;
  }
  out.premise = true;
  const double lo = 2.0 * (1.0 - t) + eps;
  double min_width = 1.0;
  out.lhs = lo;
  out.rhs = t - 3.0 * eps;
  out.detail = "all bands nonempty";
  for (int k = 0; k < n; ++k) {
    const double upper_loose = t - (k + 2) * eps;
    const double upper = t - (k + 3) * eps;
    if (!(lo < t - eps)) {
      fail(out, lo, t - eps, describe("gap 2(1-t)+eps < t-eps fails at k=%.0f (n=%.0f)",
                                      static_cast<double>(k), static_cast<double>(n)));
      break;
    }
    if (!(lo < upper_loose)) {
      fail(out, lo, upper_loose,
           describe("gap 2(1-t)+eps < t-(k+2)eps fails at k=%.0f (n=%.0f)",
                    static_cast<double>(k), static_cast<double>(n)));
      break;
    }
    if (!(upper > 0.0)) {
      fail(out, upper, 0.0, describe("positivity t-(k+3)eps > 0 fails at k=%.0f (n=%.0f)",
                                     static_cast<double>(k), static_cast<double>(n)));
      break;
    }
    if (!(lo < upper)) {
      fail(out, lo, upper, describe("band (2(1-t)+eps, t-(k+3)eps) empty at k=%.0f (n=%.0f)",
                                    static_cast<double>(k), static_cast<double>(n)));
      break;
    }
    min_width = std::min(min_width, upper - lo);
  }
  out.metrics.emplace_back("min_band_width", min_width);
  out.metrics.emplace_back("band_count", static_cast<double>(n));
  return out;
}

CheckOutcome eta_window_check(double eps, double t, int n) {
  CheckOutcome out;
  if (!(eps > 0.0) || !std::isfinite(eps) || !(t > 2.0 / 3.0 && t < 1.0) || n < 1) {
    out.detail = "needs eps > 0, t in (2/3, 1), n >= 1";
    return out;
  }
  out.premise = true;
  const double bound_count = 1.0 / (3.0 * (n + 2));
  const double bound_eps = eps / n;
  const double bound_slope = (t - 2.0 / 3.0) / n;
  const double bound_top = (1.0 - t) / 2.0;
  const double window_sup =
      std::min(std::min(bound_count, bound_eps), std::min(bound_slope, bound_top));
  out.lhs = window_sup;
  out.rhs = 0.0;
  out.detail = "window nonempty";
  if (!(window_sup > 0.0)) {
    fail(out, window_sup, 0.0, "window (0, min{...}) is empty");
  }
  out.metrics.emplace_back("window_sup", window_sup);
  out.metrics.emplace_back("bound_count", bound_count);
  out.metrics.emplace_back("bound_eps", bound_eps);
  out.metrics.emplace_back("bound_slope", bound_slope);
  out.metrics.emplace_back("bound_top", bound_top);
  return out;
}

std::pair<double, double> scaling_chain_values(double r, double eps) {
  if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(eps)) {
    throw InputError("scaling chain needs r > 0 and finite eps");
  }
  const double upper = (4.0 / r) * (r * (1.0 - eps) - (2.0 / 3.0) * (3.0 / 4.0) * r) - 4.0 * eps;
  const double lower = (4.0 / r) * (r * (0.25 + eps)) + 4.0 * eps;
  return {upper, lower};
}

CheckOutcome moduli_chain_check(double r, double eps, double z_norm) {
  CheckOutcome out;
  const bool premise = r > 0.0 && std::isfinite(r) && eps > 0.0 && eps < 1.0 / 16.0 &&
                       z_norm >= r * (1.0 - eps) / 4.0 - kTau &&
                       z_norm <= r * (1.0 + eps) / 4.0 + kTau;
  if (!premise) {
    out.detail = "needs r > 0, eps in (0, 1/16), z_norm in [r(1-eps)/4, r(1+eps)/4]";
    return out;
  }
  out.premise = true;
  const auto [upper, lower] = scaling_chain_values(r, eps);
  const double dev_upper = std::fabs(upper - (2.0 - 8.0 * eps));
  const double dev_lower = std::fabs(lower - (1.0 + 8.0 * eps));
  const double window_gap = std::fabs(4.0 * z_norm / r - 1.0);
  const auto [upper_small, lower_small] = scaling_chain_values(r, eps / 8.0);
  const double dev_gap_upper = std::fabs(upper_small - (2.0 - eps));
  const double dev_gap_lower = std::fabs(lower_small - (1.0 + eps));

  out.lhs = upper;
  out.rhs = lower;
  out.detail = "chain identities hold";
  if (dev_upper > 1e-12) {
    fail(out, upper, 2.0 - 8.0 * eps, "upper chain misses 2 - 8 eps");
  }
  if (dev_lower > 1e-12) {
    fail(out, lower, 1.0 + 8.0 * eps, "lower chain misses 1 + 8 eps");
  }
  if (!(lower < upper)) {
    fail(out, lower, upper, "chain endpoints out of order (needs eps < 1/16)");
  }
  if (window_gap > 4.0 * eps + 1e-12) {
    fail(out, window_gap, 4.0 * eps, "|4 z / r - 1| exceeds 4 eps");
  }
  if (dev_gap_upper > 1e-12) {
    fail(out, upper_small, 2.0 - eps, "gap factor 8 misses 2 - eps");
  }
  if (dev_gap_lower > 1e-12) {
    fail(out, lower_small, 1.0 + eps, "gap factor 8 misses 1 + eps");
  }
  out.metrics.emplace_back("chain_upper", upper);
  out.metrics.emplace_back("chain_lower", lower);
  out.metrics.emplace_back("deviation_upper", dev_upper);
  out.metrics.emplace_back("deviation_lower", dev_lower);
  out.metrics.emplace_back("window_gap", window_gap);
  out.metrics.emplace_back("gap_upper", upper_small);
  out.metrics.emplace_back("gap_lower", lower_small);
  return out;
}

CheckOutcome coefficient_chain_check(double a, double b, double eta, double lim_f, double f_x) {
  CheckOutcome out;
  const double floor_term = (a > 0.0 && eta > 0.0) ? eta * std::min(1.0, a) : 0.0;
  const bool premise = a > 0.0 && std::isfinite(a) && b >= 0.0 && std::isfinite(b) && eta > 0.0 &&
                       eta < 1.0 && lim_f > 1.0 - floor_term && f_x > a - floor_term;
  if (!premise) {
    out.detail = "premises not satisfied (strict margins required)";
    return out;
  }
  out.premise = true;
  const double lhs = lim_f + (b / a) * f_x;
  const double rhs = (1.0 + b) * (1.0 - eta);
  out.lhs = lhs;
  out.rhs = rhs;
  out.detail = "coefficient chain holds";
  if (!(lhs > rhs - 1e-12)) {
    fail(out, lhs, rhs, "lim_f + (b/a) f_x fails to clear (1+b)(1-eta)");
  }
  out.metrics.emplace_back("margin", lhs - rhs);
  return out;
}

std::vector<std::string> ledger_check_names() {
  return {"ar-constants", "iterate-bands", "eta-window", "moduli-chain", "coefficient-chain"};
}

EntailmentReport sweep_check(const std::string& name, std::uint64_t samples, std::uint64_t seed) {
  if (name == "ar-constants") {
    return sweep_entailment(
        name, "delta in (0.05, 1.5), gamma in (0.05, 0.95)", samples, seed,
        [](RngStream& rng) {
          std::map<std::string, double> p;
          p["delta"] = rng.uniform(0.05, 1.5);
          p["gamma"] = rng.uniform(0.05, 0.95);
          return p;
        },
        [](const std::map<std::string, double>& p) {
          return ar_constants_check(p.at("delta"), p.at("gamma"));
        });
  }
  if (name == "iterate-bands") {
    return sweep_entailment(
        name,
        "n in [1, 20], eps in (0, min{1/(10n), 1/(6n+6)}), t interior, 0 < lambda <= gamma < 1",
        samples, seed,
        [](RngStream& rng) {
          std::map<std::string, double> p;
          const auto n = static_cast<double>(rng.uniform_int(1, 20));
          const double eps_max = std::min(1.0 / (10.0 * n), 1.0 / (6.0 * n + 6.0));
          const double eps = eps_max * rng.uniform(0.05, 0.95);
          const double t_lo = 2.0 / 3.0 + 2.0 * n * eps;
          const double t_hi = 1.0 - 2.0 * eps;
          const double t = t_lo + (t_hi - t_lo) * rng.uniform(0.05, 0.95);
          const double lambda = rng.uniform(0.01, 0.98);
          const double gamma = lambda + (0.999 - lambda) * rng.uniform(0.0, 1.0);
          p["n"] = n;
          p["eps"] = eps;
          p["t"] = t;
          p["lambda"] = lambda;
          p["gamma"] = gamma;
          return p;
        },
        [](const std::map<std::string, double>& p) {
          return iterate_band_check(p.at("eps"), p.at("t"),
                                    static_cast<int>(std::llround(p.at("n"))), p.at("lambda"),
                                    p.at("gamma"));
        });
  }
  if (name == "eta-window") {
    return sweep_entailment(
        name, "n in [1, 20], t in (2/3, 1), eps in (0.001, 1)", samples, seed,
        [](RngStream& rng) {
          std::map<std::string, double> p;
          p["n"] = static_cast<double>(rng.uniform_int(1, 20));
          p["t"] = 2.0 / 3.0 + (1.0 / 3.0) * rng.uniform(0.01, 0.99);
          p["eps"] = rng.uniform(0.001, 1.0);
          return p;
        },
        [](const std::map<std::string, double>& p) {
          return eta_window_check(p.at("eps"), p.at("t"),
                                  static_cast<int>(std::llround(p.at("n"))));
        });
  }
  if (name == "moduli-chain") {
    return sweep_entailment(
        name, "r in (0.1, 100), eps in (0.001, 1/16), z_norm inside the r/4 window", samples,
        seed,
        [](RngStream& rng) {
          std::map<std::string, double> p;
          const double r = rng.uniform(0.1, 100.0);
          const double eps = rng.uniform(0.001, 0.0624);
          p["r"] = r;
          p["eps"] = eps;
          p["z_norm"] = (r / 4.0) * (1.0 + 0.999 * eps * rng.uniform(-1.0, 1.0));
          return p;
        },
        [](const std::map<std::string, double>& p) {
          return moduli_chain_check(p.at("r"), p.at("eps"), p.at("z_norm"));
        });
  }
  if (name == "coefficient-chain") {
    return sweep_entailment(
        name, "a in (0.05, 4), b in [0, 4), eta in (0.01, 0.99), premises with interior margins",
        samples, seed,
        [](RngStream& rng) {
          std::map<std::string, double> p;
          const double a = rng.uniform(0.05, 4.0);
          const double b = rng.uniform(0.0, 4.0);
          const double eta = rng.uniform(0.01, 0.99);
          const double floor_term = eta * std::min(1.0, a);
          p["a"] = a;
          p["b"] = b;
          p["eta"] = eta;
          p["lim_f"] = 1.0 - floor_term + rng.uniform(1e-6, 0.5);
          p["f_x"] = a - floor_term + rng.uniform(1e-6, 0.5);
          return p;
        },
        [](const std::map<std::string, double>& p) {
          return coefficient_chain_check(p.at("a"), p.at("b"), p.at("eta"), p.at("lim_f"),
                                         p.at("f_x"));
        });
  }
  throw InputError("unknown ledger check: " + name);
}

}  // namespace fptlab
