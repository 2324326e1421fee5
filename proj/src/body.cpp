#include "fptlab/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fptlab/errors.hpp"
#include "fptlab/rng.hpp"

namespace fptlab {

namespace {

// Distance from v to the hull of `points`, via Frank-Wolfe with away steps on
// the weight simplex (linearly convergent on polytopes, so boundary points are
// resolved to near machine precision). Euclidean distance: membership is a
// geometric question independent of the ambient norm choice.
double hull_distance(const std::vector<std::vector<double>>& points,
                     const std::vector<double>& v) {
  const std::size_t k = points.size();
  const std::size_t d = v.size();
  std::vector<double> w(k, 0.0);
  w[0] = 1.0;
  std::vector<double> x = points[0];  // current point sum_i w_i p_i
  std::vector<double> r(d);           // residual x - v
  for (std::size_t j = 0; j < d; ++j) r[j] = x[j] - v[j];

  std::vector<double> dir(d);
  for (int iter = 0; iter < 4000; ++iter) {
    double rr = 0.0;
    for (std::size_t j = 0; j < d; ++j) rr += r[j] * r[j];
    if (rr <= 1e-28) break;

    // gradient of (1/2)|x - v|^2 w.r.t. w_i is <p_i, r>
    std::size_t fw = 0, away = 0;
    double fw_g = std::numeric_limits<double>::infinity();
    double away_g = -std::numeric_limits<double>::infinity();
    bool have_away = false;
    for (std::size_t i = 0; i < k; ++i) {
      double g = 0.0;
      for (std::size_t j = 0; j < d; ++j) g += points[i][j] * r[j];
      if (g < fw_g) {
        fw_g = g;
        fw = i;
      }
      if (w[i] > 0.0 && g > away_g) {
        away_g = g;
        away = i;
        have_away = true;
      }
    }

    double xr = 0.0;  // <x, r>
    for (std::size_t j = 0; j < d; ++j) xr += x[j] * r[j];
    const double gap_fw = xr - fw_g;    // descent along p_fw - x
    const double gap_away = away_g - xr;  // descent along x - p_away

    const bool use_away = have_away && gap_away > gap_fw && w[away] < 1.0;
    double alpha_max;
    if (use_away) {
      for (std::size_t j = 0; j < d; ++j) dir[j] = x[j] - points[away][j];
      alpha_max = w[away] / (1.0 - w[away]);
    } else {
      for (std::size_t j = 0; j < d; ++j) dir[j] = points[fw][j] - x[j];
      alpha_max = 1.0;
    }

    double numer = 0.0, denom = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      numer -= r[j] * dir[j];
      denom += dir[j] * dir[j];
    }
    if (denom <= 0.0) break;
    const double alpha = std::clamp(numer / denom, 0.0, alpha_max);
    if (alpha <= 0.0) break;

    if (use_away) {
      for (std::size_t i = 0; i < k; ++i) w[i] *= (1.0 + alpha);
      w[away] -= alpha;
    } else {
      for (std::size_t i = 0; i < k; ++i) w[i] *= (1.0 - alpha);
      w[fw] += alpha;
    }
    for (std::size_t j = 0; j < d; ++j) {
      x[j] += alpha * dir[j];
      r[j] = x[j] - v[j];
    }
  }

  double rr = 0.0;
  for (std::size_t j = 0; j < d; ++j) rr += r[j] * r[j];
  return std::sqrt(rr);
}

double body_scale(const ConvexBody& body) {
  const auto [lo, hi] = body.bounding_box();
  double s = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    s = std::max({s, std::fabs(lo[i]), std::fabs(hi[i])});
  }
  return s;
}

}  // namespace

ConvexBody ConvexBody::box(const SpaceDescriptor& space, std::vector<double> lower,
                           std::vector<double> upper) {
  const auto dim = static_cast<std::size_t>(space.dimension);
  if (lower.size() != dim || upper.size() != dim) {
    throw InputError("box bounds must match the space dimension");
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || lower[i] > upper[i]) {
      throw InputError("box bounds must be finite with lower <= upper");
    }
  }
  return ConvexBody{space, BoxShape{std::move(lower), std::move(upper)}};
}

ConvexBody ConvexBody::ball(const SpaceDescriptor& space, std::vector<double> center,
                            double radius) {
  if (center.size() != static_cast<std::size_t>(space.dimension)) {
    throw InputError("ball center must match the space dimension");
  }
  for (double c : center) {
    if (!std::isfinite(c)) throw InputError("ball center must be finite");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("ball radius must be positive");
  return ConvexBody{space, BallShape{std::move(center), radius}};
}

ConvexBody ConvexBody::hull(const SpaceDescriptor& space,
                            std::vector<std::vector<double>> points) {
  if (points.empty()) throw InputError("hull needs at least one point");
  for (const auto& pt : points) {
    if (pt.size() != static_cast<std::size_t>(space.dimension)) {
      throw InputError("hull points must match the space dimension");
    }
    for (double c : pt) {
      if (!std::isfinite(c)) throw InputError("hull points must be finite");
    }
  }
  return ConvexBody{space, HullShape{std::move(points)}};
}

bool ConvexBody::contains(const Vector& v, double tol) const {
  if (v.coords.size() != static_cast<std::size_t>(space.dimension)) return false;
  const double scaled_tol = tol * body_scale(*this);
  if (const auto* b = std::get_if<BoxShape>(&shape)) {
    for (std::size_t i = 0; i < v.coords.size(); ++i) {
      if (v.coords[i] < b->lower[i] - scaled_tol || v.coords[i] > b->upper[i] + scaled_tol) {
        return false;
      }
    }
    return true;
  }
  if (const auto* b = std::get_if<BallShape>(&shape)) {
    Vector diff = v;
    for (std::size_t i = 0; i < diff.coords.size(); ++i) diff.coords[i] -= b->center[i];
    return norm(space, diff) <= b->radius + scaled_tol;
  }
  const auto& h = std::get<HullShape>(shape);
  return hull_distance(h.points, v.coords) <= std::max(scaled_tol, 1e-10);
}

double ConvexBody::diameter() const {
  if (const auto* b = std::get_if<BoxShape>(&shape)) {
    Vector diff;
    diff.space = space;
    diff.coords.resize(b->lower.size());
    for (std::size_t i = 0; i < b->lower.size(); ++i) diff.coords[i] = b->upper[i] - b->lower[i];
    return norm(space, diff);
  }
  if (const auto* b = std::get_if<BallShape>(&shape)) return 2.0 * b->radius;
  const auto& h = std::get<HullShape>(shape);
  std::vector<Vector> pts;
  pts.reserve(h.points.size());
  for (const auto& p : h.points) pts.push_back(Vector{p, space});
  return fptlab::diameter(pts);
}

std::pair<std::vector<double>, std::vector<double>> ConvexBody::bounding_box() const {
  if (const auto* b = std::get_if<BoxShape>(&shape)) return {b->lower, b->upper};
  if (const auto* b = std::get_if<BallShape>(&shape)) {
    std::vector<double> lo = b->center, hi = b->center;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] -= b->radius;
      hi[i] += b->radius;
    }
    return {lo, hi};
  }
  const auto& h = std::get<HullShape>(shape);
  std::vector<double> lo = h.points[0], hi = h.points[0];
  for (const auto& p : h.points) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  return {lo, hi};
}

std::vector<Vector> sample_body(const ConvexBody& body, int count, std::uint64_t seed) {
  if (count < 0) throw InputError("sample count must be nonnegative");
  RngStream rng = RngStream(seed).derive("sample_body");
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));

  if (const auto* b = std::get_if<BoxShape>(&body.shape)) {
    for (int n = 0; n < count; ++n) {
      Vector v;
      v.space = body.space;
      v.coords.resize(b->lower.size());
      for (std::size_t i = 0; i < v.coords.size(); ++i) {
        v.coords[i] = rng.uniform(b->lower[i], b->upper[i]);
      }
      out.push_back(std::move(v));
    }
    return out;
  }

  if (const auto* b = std::get_if<BallShape>(&body.shape)) {
    long attempts = 0;
    while (out.size() < static_cast<std::size_t>(count)) {
      if (++attempts > 10'000'000L) throw InputError("ball sampling stalled (acceptance rate too low)");
      Vector v;
      v.space = body.space;
      v.coords.resize(b->center.size());
      for (std::size_t i = 0; i < v.coords.size(); ++i) {
        v.coords[i] = rng.uniform(b->center[i] - b->radius, b->center[i] + b->radius);
      }
      Vector diff = v;
      for (std::size_t i = 0; i < diff.coords.size(); ++i) diff.coords[i] -= b->center[i];
      if (norm(body.space, diff) <= b->radius) out.push_back(std::move(v));
    }
    return out;
  }

  const auto& h = std::get<HullShape>(body.shape);
  for (int n = 0; n < count; ++n) {
    // Dirichlet(1) weights: members by construction.
    std::vector<double> w(h.points.size());
    double total = 0.0;
    for (double& wi : w) {
      wi = -std::log(1.0 - rng.uniform());
      total += wi;
    }
    Vector v;
    v.space = body.space;
    v.coords.assign(static_cast<std::size_t>(body.space.dimension), 0.0);
    for (std::size_t i = 0; i < h.points.size(); ++i) {
      for (std::size_t j = 0; j < v.coords.size(); ++j) v.coords[j] += (w[i] / total) * h.points[i][j];
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> lattice_grid(const ConvexBody& body, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InputError("lattice step must be positive");
  const auto [lo, hi] = body.bounding_box();
  const std::size_t dim = lo.size();

  // Per-axis point counts; the last point is clamped onto the upper bound so
  // interval endpoints are hit exactly even when (hi-lo)/step rounds down.
  std::vector<std::size_t> counts(dim);
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    const double span = hi[i] - lo[i];
    double ratio = span / step;
    std::size_t k = static_cast<std::size_t>(std::floor(ratio + 1e-9));
    counts[i] = k + 1;
    if (total > 50'000'000 / counts[i]) throw InputError("lattice too large for the given step");
    total *= counts[i];
  }

  const bool is_box = std::holds_alternative<BoxShape>(body.shape);
  std::vector<Vector> out;
  std::vector<std::size_t> idx(dim, 0);
  for (std::size_t n = 0; n < total; ++n) {
    Vector v;
    v.space = body.space;
    v.coords.resize(dim);
    std::size_t rem = n;
    for (std::size_t i = 0; i < dim; ++i) {
      const std::size_t j = rem % counts[i];
      rem /= counts[i];
      double c = lo[i] + static_cast<double>(j) * step;
      if (c > hi[i]) c = hi[i];
      v.coords[i] = c;
    }
    if (is_box || body.contains(v)) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace fptlab
