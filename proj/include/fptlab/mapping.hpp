#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fptlab/body.hpp"
#include "fptlab/space.hpp"

namespace fptlab {

// Evaluation rules. Every mapping is a self-map of its convex body; the
// evaluator enforces that on each call and raises MappingError on escape.

// T x = A x + b (row-major matrix).
struct AffineRule {
  std::vector<double> matrix;  // dimension x dimension, row-major
  std::vector<double> offset;
};

// Constant value everywhere except one designated point. The canonical member
// of the lab's parametric discontinuous family; parameters are free so the
// family can be searched.
struct IntervalThresholdRule {
  std::vector<double> regular_value;
  std::vector<double> special_point;
  std::vector<double> special_value;
};

// Cyclic: (x_1,...,x_d) -> (x_d, x_1, ..., x_{d-1}).
// Truncating: (x_1,...,x_d) -> (0, x_1, ..., x_{d-1}).
struct CoordinateShiftRule {
  bool cyclic = true;
};

// Nearest-sample evaluation: T x = to[argmin_i |x - from_i|], lowest index on
// ties.
struct FiniteTableRule {
  std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
};

// Arbitrary user closure. Not serializable.
struct ClosureRule {
  std::function<Vector(const Vector&)> fn;
};

struct MappingSpec {
  std::string name;
  ConvexBody body;
  std::variant<AffineRule, IntervalThresholdRule, CoordinateShiftRule, FiniteTableRule,
               ClosureRule>
      rule;

  // Applies the rule and checks the result stays in the body.
  Vector evaluate(const Vector& x) const;
};

// S y = (1/r) T(r y) on (1/r) * body. Named rules are closed under rescaling
// and stay exactly representable; closures are wrapped.
MappingSpec rescale_map(const MappingSpec& map, double r);

// Canonical zoo instances. Bodies of the multi-dimensional members are kept
// small enough that a step-0.01 lattice stays tractable for pairwise checks.
MappingSpec make_interval_threshold();              // [0,3]: 0 away from 3, T(3) = 1
MappingSpec make_interval_threshold(double lo, double hi, double regular,
                                    double special_point, double special_value);
MappingSpec make_contraction_half();                // x/2 on [-1,1]
MappingSpec make_identity_map();                    // on [-1,1]
MappingSpec make_negation();                        // -x on [-1,1]
MappingSpec make_plane_rotation(double angle, double radius);  // l_2^2 ball
MappingSpec make_cyclic_shift(int dimension, double radius);   // l_2 ball
MappingSpec make_truncating_shift(int dimension, double radius);
MappingSpec make_two_point_snap();                  // nearest of {0, 1} on [0,1]

// The full zoo, and lookup by name.
std::vector<MappingSpec> mapping_zoo();
MappingSpec zoo_map(const std::string& name);
std::vector<std::string> zoo_names();

}  // namespace fptlab
