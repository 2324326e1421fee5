#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fptlab {

// Default additive slack for floating-point comparisons of norms.
inline constexpr double kTau = 1e-12;

enum class NormKind { PNorm, SupNorm };

// A finite-dimensional normed space: R^d with an l_p norm (p in [1, inf)) or
// the sup norm.
struct SpaceDescriptor {
  int dimension = 1;
  NormKind kind = NormKind::PNorm;
  double p = 2.0;  // exponent; meaningful only when kind == PNorm

  static SpaceDescriptor lp(double p, int dimension);
  static SpaceDescriptor sup(int dimension);

  // Conjugate exponent q with 1/p + 1/q = 1. Sup norm dualizes to q = 1;
  // p = 1 dualizes to the sup norm (reported as infinity).
  double conjugate_exponent() const;

  bool operator==(const SpaceDescriptor& o) const;
  std::string describe() const;
};

struct Vector {
  std::vector<double> coords;
  SpaceDescriptor space;
};

// Validating constructor: rejects non-finite entries and dimension mismatch.
Vector make_vector(const SpaceDescriptor& space, std::vector<double> coords);

Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(double s, const Vector& v);
// a + s * b
Vector axpy(const Vector& a, double s, const Vector& b);

double norm(const SpaceDescriptor& space, const Vector& v);
double norm(const Vector& v);
double distance(const Vector& a, const Vector& b);

// A continuous linear functional represented by its coefficient vector,
// evaluated as the dot product. Its natural norm is the dual (conjugate) norm
// of the ambient space.
struct Functional {
  std::vector<double> coeffs;
  SpaceDescriptor space;
};

double apply(const Functional& f, const Vector& v);
double dual_norm(const Functional& f);

// Support functional at v: f with f(v) = |v| and dual norm 1.
//
// For p in (1, inf) the space is smooth and f is the duality map,
// f_i = sign(v_i) |v_i|^{p-1} / |v|^{p-1}. At the non-smooth endpoints the
// selection is pinned by a documented tie-break: p = 1 takes sign(v_i) with 0
// on zero coordinates; the sup norm puts all mass on the lowest index
// attaining the max.
Functional norming_functional(const SpaceDescriptor& space, const Vector& v);

// Max pairwise distance of a finite point set. Empty input is an error.
double diameter(const std::vector<Vector>& points);

struct AsymptoticRadiusResult {
  double radius = 0.0;
  Vector center;
  std::size_t center_index = 0;
};

// Finite-candidate asymptotic radius: score(x) = max over the last
// `tail_window` tail entries of |x_n - x|; returns the minimal score and the
// lowest-index argmin among the candidates.
AsymptoticRadiusResult asymptotic_radius(const std::vector<Vector>& tail,
                                         const std::vector<Vector>& candidates,
                                         std::size_t tail_window = 16);

}  // namespace fptlab
