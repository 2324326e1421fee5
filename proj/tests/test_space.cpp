#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "fptlab/errors.hpp"
#include "fptlab/rng.hpp"
#include "fptlab/space.hpp"

using namespace fptlab;

namespace {

Vector vec(const SpaceDescriptor& s, std::vector<double> c) {
  return make_vector(s, std::move(c));
}

}  // namespace

TEST_CASE("p-norm values agree with hand-computed constants") {
  const auto l2 = SpaceDescriptor::lp(2.0, 2);
  CHECK(norm(vec(l2, {3.0, 4.0})) == 5.0);
  CHECK(norm(vec(l2, {1.0, 1.0})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const auto l3 = SpaceDescriptor::lp(3.0, 2);
  // (1^3 + 1^3)^(1/3) = 2^(1/3)
  CHECK(norm(vec(l3, {1.0, 1.0})) == doctest::Approx(1.2599210498948732).epsilon(1e-15));

  const auto l1 = SpaceDescriptor::lp(1.0, 3);
  CHECK(norm(vec(l1, {1.0, -2.0, 3.0})) == 6.0);

  const auto sup = SpaceDescriptor::sup(3);
  CHECK(norm(vec(sup, {1.0, -2.5, 2.0})) == 2.5);
  CHECK(norm(vec(sup, {0.0, 0.0, 0.0})) == 0.0);
}

TEST_CASE("norm axioms hold on seeded random vectors") {
  RngStream rng(17);
  const SpaceDescriptor spaces[] = {
      SpaceDescriptor::lp(1.0, 4), SpaceDescriptor::lp(2.0, 4),
      SpaceDescriptor::lp(3.5, 4), SpaceDescriptor::sup(4)};
  for (const auto& s : spaces) {
    auto draw = [&] {
      std::vector<double> c(4);
      for (auto& x : c) x = rng.uniform(-5.0, 5.0);
      return vec(s, std::move(c));
    };
    for (int rep = 0; rep < 50; ++rep) {
      const Vector a = draw();
      const Vector b = draw();
      const double t = rng.uniform(-3.0, 3.0);
      CHECK(norm(a) >= 0.0);
      // triangle inequality
      CHECK(norm(add(a, b)) <= norm(a) + norm(b) + 1e-12);
      // absolute homogeneity
      CHECK(norm(scale(t, a)) == doctest::Approx(std::fabs(t) * norm(a)).epsilon(1e-12));
      // symmetry of the induced distance
      CHECK(distance(a, b) == distance(b, a));
    }
  }
}

TEST_CASE("vector arithmetic validates input") {
  const auto l2 = SpaceDescriptor::lp(2.0, 2);
  CHECK_THROWS_AS(make_vector(l2, {1.0}), InputError);
  CHECK_THROWS_AS(make_vector(l2, {1.0, std::numeric_limits<double>::quiet_NaN()}),
                  InputError);
  CHECK_THROWS_AS(make_vector(l2, {1.0, std::numeric_limits<double>::infinity()}),
                  InputError);
  // mismatched spaces cannot be combined
  const auto l2_3 = SpaceDescriptor::lp(2.0, 3);
  CHECK_THROWS_AS(add(vec(l2, {1.0, 2.0}), vec(l2_3, {1.0, 2.0, 3.0})), InputError);
  CHECK_THROWS_AS(SpaceDescriptor::lp(0.5, 2), InputError);
  CHECK_THROWS_AS(SpaceDescriptor::lp(2.0, 0), InputError);
  CHECK_THROWS_AS(SpaceDescriptor::sup(-1), InputError);
}

TEST_CASE("axpy composes scale and add") {
  const auto l2 = SpaceDescriptor::lp(2.0, 2);
  const Vector a = vec(l2, {1.0, 2.0});
  const Vector b = vec(l2, {-1.0, 0.5});
  const Vector r = axpy(a, 0.25, b);
  CHECK(r.coords[0] == 0.75);
  CHECK(r.coords[1] == 2.125);
}

TEST_CASE("conjugate exponents pair up") {
  CHECK(SpaceDescriptor::lp(2.0, 2).conjugate_exponent() == doctest::Approx(2.0));
  CHECK(SpaceDescriptor::lp(4.0, 2).conjugate_exponent() ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(std::isinf(SpaceDescriptor::lp(1.0, 2).conjugate_exponent()));
  CHECK(SpaceDescriptor::sup(2).conjugate_exponent() == 1.0);
}

TEST_CASE("norming functional attains the norm with unit dual norm") {
  RngStream rng(99);
  const SpaceDescriptor spaces[] = {
      SpaceDescriptor::lp(1.0, 3), SpaceDescriptor::lp(2.0, 3),
      SpaceDescriptor::lp(3.0, 3), SpaceDescriptor::sup(3)};
  for (const auto& s : spaces) {
    for (int rep = 0; rep < 25; ++rep) {
      std::vector<double> c(3);
      for (auto& x : c) x = rng.uniform(-2.0, 2.0);
      const Vector v = vec(s, std::move(c));
      if (norm(v) < 1e-9) continue;
      const Functional f = norming_functional(s, v);
      CHECK(apply(f, v) == doctest::Approx(norm(v)).epsilon(1e-12));
      CHECK(dual_norm(f) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("norming functional is the explicit duality map in the smooth case") {
  const auto l2 = SpaceDescriptor::lp(2.0, 2);
  const Functional f = norming_functional(l2, vec(l2, {3.0, 4.0}));
  CHECK(f.coeffs[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(f.coeffs[1] == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("norming functional tie-breaks are pinned at the non-smooth endpoints") {
  const auto sup = SpaceDescriptor::sup(3);
  // both coordinates attain the max; mass goes to the lowest index
  const Functional f = norming_functional(sup, vec(sup, {2.0, -2.0, 1.0}));
  CHECK(f.coeffs[0] == 1.0);
  CHECK(f.coeffs[1] == 0.0);
  CHECK(f.coeffs[2] == 0.0);

  const auto l1 = SpaceDescriptor::lp(1.0, 3);
  const Functional g = norming_functional(l1, vec(l1, {1.5, 0.0, -0.5}));
  CHECK(g.coeffs[0] == 1.0);
  CHECK(g.coeffs[1] == 0.0);
  CHECK(g.coeffs[2] == -1.0);

  CHECK_THROWS_AS(norming_functional(sup, vec(sup, {0.0, 0.0, 0.0})), InputError);
}

TEST_CASE("functional application is the dot product") {
  const auto l2 = SpaceDescriptor::lp(2.0, 2);
  Functional f;
  f.space = l2;
  f.coeffs = {2.0, -1.0};
  CHECK(apply(f, vec(l2, {3.0, 4.0})) == 2.0);
  CHECK(dual_norm(f) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));

  Functional g;
  g.space = SpaceDescriptor::sup(2);
  g.coeffs = {2.0, -1.0};
  // sup norm dualizes to the 1-norm
  CHECK(dual_norm(g) == 3.0);
}

TEST_CASE("diameter of a finite set is the max pairwise distance") {
  const auto l2 = SpaceDescriptor::lp(2.0, 2);
  const std::vector<Vector> corners = {vec(l2, {0.0, 0.0}), vec(l2, {1.0, 0.0}),
                                       vec(l2, {0.0, 1.0}), vec(l2, {1.0, 1.0})};
  CHECK(diameter(corners) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const auto l1 = SpaceDescriptor::lp(1.0, 2);
  const std::vector<Vector> corners1 = {vec(l1, {0.0, 0.0}), vec(l1, {1.0, 0.0}),
                                        vec(l1, {0.0, 1.0}), vec(l1, {1.0, 1.0})};
  CHECK(diameter(corners1) == 2.0);

  CHECK(diameter({vec(l2, {3.0, 3.0})}) == 0.0);
  CHECK_THROWS_AS(diameter({}), InputError);
}

TEST_CASE("asymptotic radius scores candidates over the tail window") {
  const auto line = SpaceDescriptor::lp(2.0, 1);
  std::vector<Vector> tail;
  for (int n = 1; n <= 10; ++n) tail.push_back(vec(line, {1.0 / n}));

  SUBCASE("single candidate radius is the window sup") {
    const auto r = asymptotic_radius(tail, {vec(line, {0.0})}, 3);
    // window {1/8, 1/9, 1/10}; farthest from 0 is 1/8
    CHECK(r.radius == 0.125);
    CHECK(r.center_index == 0);
  }
  SUBCASE("better-placed candidate wins") {
    const auto r = asymptotic_radius(tail, {vec(line, {0.0}), vec(line, {0.2})}, 3);
    CHECK(r.center_index == 1);
    CHECK(r.radius == doctest::Approx(0.1).epsilon(1e-15));
  }
  SUBCASE("exact ties keep the lowest index") {
    const auto r = asymptotic_radius(tail, {vec(line, {0.3}), vec(line, {0.3})}, 3);
    CHECK(r.center_index == 0);
  }
  SUBCASE("window and candidate validation") {
    CHECK_THROWS_AS(asymptotic_radius(tail, {}, 3), InputError);
    CHECK_THROWS_AS(asymptotic_radius(tail, {vec(line, {0.0})}, 0), InputError);
    CHECK_THROWS_AS(asymptotic_radius(tail, {vec(line, {0.0})}, 11), InputError);
  }
}

TEST_CASE("space descriptors compare and describe themselves") {
  CHECK(SpaceDescriptor::lp(2.0, 3) == SpaceDescriptor::lp(2.0, 3));
  CHECK_FALSE(SpaceDescriptor::lp(2.0, 3) == SpaceDescriptor::lp(2.0, 2));
  CHECK_FALSE(SpaceDescriptor::lp(2.0, 3) == SpaceDescriptor::sup(3));
  CHECK(SpaceDescriptor::lp(2.0, 3).describe().find("3") != std::string::npos);
}
