#include "fptlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fptlab/errors.hpp"
#include "fptlab/rng.hpp"

namespace fptlab {

namespace {

bool is_schur(const SpaceDescriptor& space) {
  return space.kind == NormKind::PNorm && space.p == 1.0;
}

void require_block_space(const SpaceDescriptor& space) {
  if (is_schur(space)) {
    throw InputError(
        "block-sequence asymptotics are undefined for the l_1 norm: the space "
        "has the Schur property, so weakly null unit-sphere sequences do not exist");
  }
}

std::string format_witness(const char* fmt, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return buf;
}

ModulusEstimate schur_estimate(ModulusTag tag, double argument, double anchor_norm) {
  ModulusEstimate est;
  est.modulus = tag;
  est.argument = argument;
  est.anchor_norm = anchor_norm;
  est.value = std::nullopt;
  est.direction = BoundDirection::ExactForModel;
  est.schur_property = true;
  est.witness =
      "l_1 has the Schur property: weakly null sequences converge in norm, so "
      "no unit-sphere block sequence exists and the modulus carries no value";
  return est;
}

double limit_combined(const SpaceDescriptor& space, double anchor_part, double block_part) {
  if (space.kind == NormKind::SupNorm) return std::max(anchor_part, block_part);
  const double p = space.p;
  return std::pow(std::pow(anchor_part, p) + std::pow(block_part, p), 1.0 / p);
}

}  // namespace

double BlockSequenceModel::separation() const {
  if (space.kind == NormKind::SupNorm) return block_norm;
  return std::pow(2.0, 1.0 / space.p) * block_norm;
}

bool BlockSequenceModel::in_unit_ball_class() const {
  return block_norm <= 1.0 + kTau && separation() <= 1.0 + kTau;
}

BlockSequenceModel make_block_model(const SpaceDescriptor& space, double block_norm,
                                    double anchor_norm) {
  require_block_space(space);
  if (!(block_norm >= 0.0) || !std::isfinite(block_norm)) {
    throw InputError("block norm must be finite and nonnegative");
  }
  if (!(anchor_norm >= 0.0) || !std::isfinite(anchor_norm)) {
    throw InputError("anchor norm must be finite and nonnegative");
  }
  return BlockSequenceModel{space, block_norm, anchor_norm};
}

double limit_norm(const BlockSequenceModel& model, double alpha, double beta) {
  // Disjoint supports: in the limit the anchor contributes |alpha| * |x| on its
  // block and the tail contributes |beta| * c on a fresh block.
  return limit_combined(model.space, std::fabs(alpha) * model.anchor_norm,
                        std::fabs(beta) * model.block_norm);
}

ModulusEstimate modulus_d(const SpaceDescriptor& space, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InputError("d(eps) requires eps > 0");
  }
  if (is_schur(space)) return schur_estimate(ModulusTag::d, eps, 1.0);
  ModulusEstimate est;
  est.modulus = ModulusTag::d;
  est.argument = eps;
  est.anchor_norm = 1.0;
  est.direction = BoundDirection::ExactForModel;
  // Every unit-sphere block sequence yields the same limit, so inf = value.
  est.value = limit_combined(space, 1.0, eps) - 1.0;
  est.witness = format_witness("unit anchor with unit blocks; lim |x + %.17g y_n| = %.17g",
                               eps, *est.value + 1.0);
  return est;
}

ModulusEstimate modulus_b1(const SpaceDescriptor& space, double eps, double anchor_norm) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw InputError("b1(eps, x) requires eps >= 0");
  }
  if (!(anchor_norm >= 0.0) || !std::isfinite(anchor_norm)) {
    throw InputError("anchor norm must be finite and nonnegative");
  }
  if (is_schur(space)) return schur_estimate(ModulusTag::b1, eps, anchor_norm);
  ModulusEstimate est;
  est.modulus = ModulusTag::b1;
  est.argument = eps;
  est.anchor_norm = anchor_norm;
  est.direction = BoundDirection::ExactForModel;
  // The separation cap pins the extremal block norm: 2^{-1/p} for p-norms
  // (separation 2^{1/p} c <= 1), and 1 for the sup norm (separation c <= 1).
  const double cap = (space.kind == NormKind::SupNorm) ? 1.0 : std::pow(2.0, -1.0 / space.p);
  est.value = limit_combined(space, anchor_norm, eps * cap) - anchor_norm;
  est.witness = format_witness("extremal block norm %.17g at separation cap; gain %.17g",
                               cap, *est.value);
  return est;
}

ModulusEstimate modulus_b(const SpaceDescriptor& space, double eps, double anchor_norm) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw InputError("b(eps, x) requires eps >= 0");
  }
  if (!(anchor_norm >= 0.0) || !std::isfinite(anchor_norm)) {
    throw InputError("anchor norm must be finite and nonnegative");
  }
  if (is_schur(space)) return schur_estimate(ModulusTag::b, eps, anchor_norm);
  ModulusEstimate est;
  est.modulus = ModulusTag::b;
  est.argument = eps;
  est.anchor_norm = anchor_norm;
  est.direction = BoundDirection::ExactForModel;
  est.value = limit_combined(space, anchor_norm, eps) - anchor_norm;
  est.witness = format_witness("unit blocks (no separation cap); lim norm %.17g, gain %.17g",
                               *est.value + anchor_norm, *est.value);
  return est;
}

ModulusEstimate r_coefficient(const SpaceDescriptor& space, double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw InputError("R(a) requires a >= 0");
  }
  if (is_schur(space)) return schur_estimate(ModulusTag::R, a, a);
  ModulusEstimate est;
  est.modulus = ModulusTag::R;
  est.argument = a;
  est.anchor_norm = a;
  est.direction = BoundDirection::ExactForModel;
  const double cap = (space.kind == NormKind::SupNorm) ? 1.0 : std::pow(2.0, -1.0 / space.p);
  // Anchor at the full budget |x| = a and blocks at the separation cap.
  est.value = limit_combined(space, a, cap);
  est.witness = format_witness("anchor norm %.17g, block norm %.17g", a, cap);
  return est;
}

namespace {

ModulusEstimate grid_ratio_sup(const SpaceDescriptor& space, const std::vector<double>& a_grid,
                               ModulusTag tag,
                               ModulusEstimate (*denominator)(const SpaceDescriptor&, double)) {
  if (a_grid.empty()) throw InputError("coefficient grid must be nonempty");
  if (is_schur(space)) return schur_estimate(tag, 0.0, 0.0);
  double best = -1.0;
  double best_a = 0.0;
  for (double a : a_grid) {
    const ModulusEstimate den = denominator(space, a);
    const double ratio = (1.0 + a) / *den.value;
    if (ratio > best) {  // strict: lowest-index argmax on ties
      best = ratio;
      best_a = a;
    }
  }
  ModulusEstimate est;
  est.modulus = tag;
  est.argument = best_a;
  est.anchor_norm = best_a;
  est.direction = BoundDirection::LowerBoundOfSup;
  est.value = best;
  est.witness = format_witness("grid argmax a = %.17g over %.0f points", best_a,
                               static_cast<double>(a_grid.size()));
  return est;
}

}  // namespace

ModulusEstimate m_coefficient(const SpaceDescriptor& space, const std::vector<double>& a_grid) {
  return grid_ratio_sup(space, a_grid, ModulusTag::M, &r_coefficient);
}

ModulusEstimate rw_coefficient(const SpaceDescriptor& space, double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw InputError("RW(a) requires a >= 0");
  }
  if (is_schur(space)) return schur_estimate(ModulusTag::RW, a, a);
  ModulusEstimate est;
  est.modulus = ModulusTag::RW;
  est.argument = a;
  est.anchor_norm = a;
  est.direction = BoundDirection::ExactForModel;
  // Disjoint supports make lim |y_n + x| = lim |y_n - x|, so the inner min is
  // the common value; unit blocks maximize it.
  est.value = limit_combined(space, a, 1.0);
  est.witness = format_witness("anchor norm %.17g, unit blocks; symmetric limits %.17g", a,
                               *est.value);
  return est;
}

ModulusEstimate mw_coefficient(const SpaceDescriptor& space, const std::vector<double>& a_grid) {
  return grid_ratio_sup(space, a_grid, ModulusTag::MW, &rw_coefficient);
}

namespace {

Vector unit_vector(const SpaceDescriptor& space, std::vector<double> coords) {
  Vector v = make_vector(space, std::move(coords));
  const double n = norm(v);
  if (n <= 0.0) throw InputError("cannot normalize the zero vector");
  return scale(1.0 / n, v);
}

double pair_score(const Vector& x, const Vector& y) {
  // min(|x+y|, |x-y|) <= 2 for unit x, y by the triangle inequality; any fp
  // excess is normalization noise, so the cap keeps exact-2 witnesses exact.
  return std::min(std::min(norm(add(x, y)), norm(sub(x, y))), 2.0);
}

std::string describe_pair(const Vector& x, const Vector& y) {
  std::string out = "x=(";
  char buf[40];
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s%.17g", i ? ", " : "", x.coords[i]);
    out += buf;
  }
  out += "); y=(";
  for (std::size_t i = 0; i < y.coords.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s%.17g", i ? ", " : "", y.coords[i]);
    out += buf;
  }
  out += ")";
  return out;
}

}  // namespace

ModulusEstimate james_constant(const SpaceDescriptor& space, int resolution,
                               std::uint64_t seed) {
  if (space.dimension < 2) {
    throw InputError("the sphere-pair search needs dimension >= 2");
  }
  if (resolution < 8) {
    throw InputError("resolution must be at least 8");
  }

  const auto dim = static_cast<std::size_t>(space.dimension);
  std::vector<Vector> pool;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> c(dim, 0.0);
    c[i] = 1.0;
    pool.push_back(unit_vector(space, std::move(c)));
  }
  if (dim <= 12) {
    // Sign corners with the first coordinate pinned to +1 (signs are symmetric).
    const std::size_t patterns = std::size_t{1} << (dim - 1);
    for (std::size_t mask = 0; mask < patterns; ++mask) {
      std::vector<double> c(dim, 1.0);
      for (std::size_t i = 1; i < dim; ++i) {
        if (mask & (std::size_t{1} << (i - 1))) c[i] = -1.0;
      }
      pool.push_back(unit_vector(space, std::move(c)));
    }
  }
  RngStream rng = RngStream(seed).derive("james_constant");
  if (space.dimension == 2) {
    for (int k = 0; k < resolution; ++k) {
      const double theta = 2.0 * M_PI * k / resolution;
      pool.push_back(unit_vector(space, {std::cos(theta), std::sin(theta)}));
    }
  } else {
    for (int k = 0; k < resolution; ++k) {
      std::vector<double> c(space.dimension);
      for (double& v : c) v = rng.normal();
      pool.push_back(unit_vector(space, std::move(c)));
    }
  }

  double best = -1.0;
  Vector bx = pool[0];
  Vector by = pool[1];
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const double s = pair_score(pool[i], pool[j]);
      if (s > best) {
        best = s;
        bx = pool[i];
        by = pool[j];
      }
    }
  }

  // Local refinement on the sphere; only strict improvements are kept, so the
  // exact canonical hits (basis pairs, corner pairs) can never be degraded.
  double sigma = 0.5 / resolution;
  for (int iter = 0; iter < 400; ++iter) {
    std::vector<double> cx = bx.coords;
    std::vector<double> cy = by.coords;
    for (double& v : cx) v += sigma * rng.normal();
    for (double& v : cy) v += sigma * rng.normal();
    Vector nx = unit_vector(space, std::move(cx));
    Vector ny = unit_vector(space, std::move(cy));
    const double s = pair_score(nx, ny);
    if (s > best) {
      best = s;
      bx = std::move(nx);
      by = std::move(ny);
    }
    sigma *= 0.985;
  }

  ModulusEstimate est;
  est.modulus = ModulusTag::J;
  est.argument = static_cast<double>(resolution);
  est.anchor_norm = 1.0;
  est.direction = BoundDirection::LowerBoundOfSup;
  est.value = best;
  est.witness = describe_pair(bx, by);
  return est;
}

double r_from_b1_crosscheck(const SpaceDescriptor& space, double a, double s_step) {
  require_block_space(space);
  if (!(a >= 0.0) || !std::isfinite(a)) throw InputError("a must be >= 0");
  if (!(s_step > 0.0)) throw InputError("s_step must be positive");
  double best = 0.0;
  for (double s : uniform_grid(0.0, a, s_step)) {
    const double candidate = *modulus_b1(space, 1.0, s).value + s;
    best = std::max(best, candidate);
  }
  return best;
}

RCoefficientEquivalence r_coefficient_equivalence(const SpaceDescriptor& space,
                                                  const std::vector<double>& a_grid) {
  require_block_space(space);
  bool any_positive = false;
  RCoefficientEquivalence eq;
  eq.all_strict = true;
  for (double a : a_grid) {
    if (!(a > 0.0)) continue;
    any_positive = true;
    const double r = *r_coefficient(space, a).value;
    const bool strict = r < (1.0 + a) - kTau;
    eq.exists_strict = eq.exists_strict || strict;
    eq.all_strict = eq.all_strict && strict;
  }
  if (!any_positive) {
    throw InputError("equivalence grid needs at least one a > 0 entry");
  }
  eq.m_value = *m_coefficient(space, a_grid).value;
  eq.m_above_one = eq.m_value > 1.0 + kTau;
  eq.consistent = (eq.m_above_one == eq.exists_strict) && (eq.exists_strict == eq.all_strict);
  return eq;
}

NuncReport nunc_witness(const SpaceDescriptor& space, double eps,
                        const std::vector<double>& t_grid) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InputError("eps must be positive");
  if (t_grid.empty()) throw InputError("t grid must be nonempty");
  for (double t : t_grid) {
    if (!(t > 0.0 && t <= 1.0 + kTau)) {
      throw InputError("t grid values must lie in (0, 1]");
    }
  }
  NuncReport report;
  if (is_schur(space)) {
    // Norm convergence of weakly null sequences makes the disjunction vacuous.
    report.schur_property = true;
    report.satisfied = true;
    report.branch = "schur_property";
    return report;
  }
  const double d_val = *modulus_d(space, eps).value;
  for (double t : t_grid) {
    const double b_val = *modulus_b(space, t, 1.0).value;
    if (d_val >= t - kTau) {
      report.satisfied = true;
      report.t = t;
      report.branch = "d_branch";
      report.d_value = d_val;
      report.b_value = b_val;
      return report;
    }
    if (b_val <= eps * t + kTau) {
      report.satisfied = true;
      report.t = t;
      report.branch = "b_branch";
      report.d_value = d_val;
      report.b_value = b_val;
      return report;
    }
  }
  report.d_value = d_val;
  return report;
}

ScalarMaximum maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              double step) {
  if (!(lo <= hi)) throw InputError("maximize_scalar needs lo <= hi");
  if (!(step > 0.0)) throw InputError("maximize_scalar needs a positive step");
  const std::vector<double> grid = uniform_grid(lo, hi, step);
  std::size_t best_idx = 0;
  double best_val = f(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v > best_val) {
      best_val = v;
      best_idx = i;
    }
  }
  // Golden-section refinement inside the bracketing cells.
  double a = grid[best_idx > 0 ? best_idx - 1 : 0];
  double b = grid[std::min(best_idx + 1, grid.size() - 1)];
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 160 && (b - a) > 0.0; ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  ScalarMaximum out;
  const double mid = 0.5 * (a + b);
  const double fmid = f(mid);
  out.x = mid;
  out.value = fmid;
  if (best_val > out.value) {
    out.x = grid[best_idx];
    out.value = best_val;
  }
  if (fc > out.value) {
    out.x = c;
    out.value = fc;
  }
  if (fd > out.value) {
    out.x = d;
    out.value = fd;
  }
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(lo <= hi)) throw InputError("grid needs lo <= hi");
  if (!(step > 0.0)) throw InputError("grid needs a positive step");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  out.reserve(n + 2);
  for (std::size_t k = 0; k <= n; ++k) out.push_back(lo + static_cast<double>(k) * step);
  if (hi - out.back() > 1e-12 * std::max(1.0, std::fabs(hi))) {
    out.push_back(hi);
  } else {
    out.back() = std::min(out.back(), hi);
  }
  return out;
}

const char* modulus_name(ModulusTag tag) {
  switch (tag) {
    case ModulusTag::d: return "d";
    case ModulusTag::b: return "b";
    case ModulusTag::b1: return "b1";
    case ModulusTag::R: return "R";
    case ModulusTag::M: return "M";
    case ModulusTag::RW: return "RW";
    case ModulusTag::MW: return "MW";
    case ModulusTag::J: return "J";
  }
  return "?";
}

const char* direction_name(BoundDirection dir) {
  switch (dir) {
    case BoundDirection::LowerBoundOfSup: return "lower_bound_of_sup";
    case BoundDirection::UpperBoundOfInf: return "upper_bound_of_inf";
    case BoundDirection::ExactForModel: return "exact_for_model";
  }
  return "?";
}

}  // namespace fptlab
