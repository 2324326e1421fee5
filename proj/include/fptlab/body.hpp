#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "fptlab/space.hpp"

namespace fptlab {

// Nonempty bounded convex subsets of a space, in three closed-form shapes.
// Membership is exact for boxes and balls; hulls are decided by a
// convex-combination search (no exact high-dimensional hull test).
struct BoxShape {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct BallShape {
  std::vector<double> center;
  double radius = 1.0;
};

struct HullShape {
  std::vector<std::vector<double>> points;
};

struct ConvexBody {
  SpaceDescriptor space;
  std::variant<BoxShape, BallShape, HullShape> shape;

  static ConvexBody box(const SpaceDescriptor& space, std::vector<double> lower,
                        std::vector<double> upper);
  static ConvexBody ball(const SpaceDescriptor& space, std::vector<double> center,
                         double radius);
  static ConvexBody hull(const SpaceDescriptor& space,
                         std::vector<std::vector<double>> points);

  bool contains(const Vector& v, double tol = 1e-9) const;

  // Exact diameter: opposite corners for boxes, 2r for balls, max pairwise
  // vertex distance for hulls (the diameter of a polytope is attained at
  // vertices).
  double diameter() const;

  // Axis-aligned bounding box (lower, upper).
  std::pair<std::vector<double>, std::vector<double>> bounding_box() const;
};

// Deterministic members of the body: uniform per-coordinate for boxes,
// rejection sampling from the bounding box for balls, random convex
// combinations of the vertices for hulls. Same seed, same list.
std::vector<Vector> sample_body(const ConvexBody& body, int count, std::uint64_t seed);

// Deterministic axis-aligned lattice of the body with the given step
// (bounding-box lattice filtered by membership for balls and hulls).
std::vector<Vector> lattice_grid(const ConvexBody& body, double step);

}  // namespace fptlab
