#include "fptlab/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fptlab/errors.hpp"

namespace fptlab {

namespace {

void require_finite(const std::vector<double>& coords) {
  for (double c : coords) {
    if (!std::isfinite(c)) throw InputError("vector coordinates must be finite");
  }
}

void require_dim(const SpaceDescriptor& space, const Vector& v) {
  if (static_cast<std::size_t>(space.dimension) != v.coords.size()) {
    throw InputError("dimension mismatch: space has dimension " +
                     std::to_string(space.dimension) + ", vector has " +
                     std::to_string(v.coords.size()));
  }
}

void require_same_dim(const Vector& a, const Vector& b) {
  if (a.coords.size() != b.coords.size()) {
    throw InputError("dimension mismatch between vectors");
  }
}

double p_norm(const std::vector<double>& coords, double p) {
  if (p == 1.0) {
    double s = 0.0;
    for (double c : coords) s += std::fabs(c);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double c : coords) s += c * c;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double c : coords) s += std::pow(std::fabs(c), p);
  return std::pow(s, 1.0 / p);
}

double sup_norm(const std::vector<double>& coords) {
  double m = 0.0;
  for (double c : coords) m = std::max(m, std::fabs(c));
  return m;
}

}  // namespace

SpaceDescriptor SpaceDescriptor::lp(double p, int dimension) {
  if (dimension < 1) throw InputError("dimension must be >= 1");
  if (!(p >= 1.0) || !std::isfinite(p)) throw InputError("p must be finite and >= 1");
  SpaceDescriptor s;
  s.dimension = dimension;
  s.kind = NormKind::PNorm;
  s.p = p;
  return s;
}

SpaceDescriptor SpaceDescriptor::sup(int dimension) {
  if (dimension < 1) throw InputError("dimension must be >= 1");
  SpaceDescriptor s;
  s.dimension = dimension;
  s.kind = NormKind::SupNorm;
  s.p = 0.0;
  return s;
}

double SpaceDescriptor::conjugate_exponent() const {
  if (kind == NormKind::SupNorm) return 1.0;
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

bool SpaceDescriptor::operator==(const SpaceDescriptor& o) const {
  if (dimension != o.dimension || kind != o.kind) return false;
  return kind == NormKind::SupNorm || p == o.p;
}

std::string SpaceDescriptor::describe() const {
  std::ostringstream out;
  if (kind == NormKind::SupNorm) {
    out << "l_inf^" << dimension;
  } else {
    out << "l_" << p << "^" << dimension;
  }
  return out.str();
}

Vector make_vector(const SpaceDescriptor& space, std::vector<double> coords) {
  if (static_cast<std::size_t>(space.dimension) != coords.size()) {
    throw InputError("dimension mismatch: space has dimension " +
                     std::to_string(space.dimension) + ", got " +
                     std::to_string(coords.size()) + " coordinates");
  }
  require_finite(coords);
  return Vector{std::move(coords), space};
}

Vector add(const Vector& a, const Vector& b) {
  require_same_dim(a, b);
  Vector r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  require_same_dim(a, b);
  Vector r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
  return r;
}

Vector scale(double s, const Vector& v) {
  Vector r = v;
  for (double& c : r.coords) c *= s;
  return r;
}

Vector axpy(const Vector& a, double s, const Vector& b) {
  require_same_dim(a, b);
  Vector r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += s * b.coords[i];
  return r;
}

double norm(const SpaceDescriptor& space, const Vector& v) {
  require_dim(space, v);
  require_finite(v.coords);
  return space.kind == NormKind::SupNorm ? sup_norm(v.coords) : p_norm(v.coords, space.p);
}

double norm(const Vector& v) { return norm(v.space, v); }

double distance(const Vector& a, const Vector& b) { return norm(a.space, sub(a, b)); }

double apply(const Functional& f, const Vector& v) {
  if (f.coeffs.size() != v.coords.size()) throw InputError("dimension mismatch in functional application");
  double s = 0.0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) s += f.coeffs[i] * v.coords[i];
  return s;
}

double dual_norm(const Functional& f) {
  const double q = f.space.conjugate_exponent();
  if (f.space.kind == NormKind::SupNorm) return p_norm(f.coeffs, 1.0);
  if (std::isinf(q)) return sup_norm(f.coeffs);
  return p_norm(f.coeffs, q);
}

Functional norming_functional(const SpaceDescriptor& space, const Vector& v) {
  require_dim(space, v);
  const double n = norm(space, v);
  if (n == 0.0) throw InputError("norming functional is undefined at the zero vector");

  Functional f;
  f.space = space;
  f.coeffs.assign(v.coords.size(), 0.0);

  if (space.kind == NormKind::SupNorm) {
    // All mass on the lowest index attaining the max.
    std::size_t j = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.coords.size(); ++i) {
      const double a = std::fabs(v.coords[i]);
      if (a > best) {
        best = a;
        j = i;
      }
    }
    f.coeffs[j] = v.coords[j] > 0 ? 1.0 : -1.0;
    return f;
  }

  if (space.p == 1.0) {
    for (std::size_t i = 0; i < v.coords.size(); ++i) {
      if (v.coords[i] > 0) f.coeffs[i] = 1.0;
      else if (v.coords[i] < 0) f.coeffs[i] = -1.0;
    }
    return f;
  }

  // Smooth case: duality map, normalized so f(v) = |v| with dual norm 1.
  const double denom = std::pow(n, space.p - 1.0);
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    const double a = std::fabs(v.coords[i]);
    if (a == 0.0) continue;
    const double m = std::pow(a, space.p - 1.0) / denom;
    f.coeffs[i] = v.coords[i] > 0 ? m : -m;
  }
  return f;
}

double diameter(const std::vector<Vector>& points) {
  if (points.empty()) throw InputError("diameter of an empty point set is undefined");
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      d = std::max(d, distance(points[i], points[j]));
    }
  }
  return d;
}

AsymptoticRadiusResult asymptotic_radius(const std::vector<Vector>& tail,
                                         const std::vector<Vector>& candidates,
                                         std::size_t tail_window) {
  if (candidates.empty()) throw InputError("asymptotic radius needs at least one candidate");
  if (tail_window == 0) throw InputError("tail window must be positive");
  if (tail_window > tail.size()) {
    throw InputError("tail window exceeds tail length (" + std::to_string(tail_window) +
                     " > " + std::to_string(tail.size()) + ")");
  }
  const std::size_t begin = tail.size() - tail_window;

  AsymptoticRadiusResult best;
  best.radius = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    double score = 0.0;
    for (std::size_t n = begin; n < tail.size(); ++n) {
      score = std::max(score, distance(tail[n], candidates[c]));
    }
    if (score < best.radius) {  // strict: keeps the lowest-index argmin
      best.radius = score;
      best.center = candidates[c];
      best.center_index = c;
    }
  }
  return best;
}

}  // namespace fptlab
