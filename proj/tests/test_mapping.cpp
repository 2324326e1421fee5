#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fptlab/errors.hpp"
#include "fptlab/mapping.hpp"
#include "fptlab/space.hpp"

using namespace fptlab;

namespace {

Vector vec(const SpaceDescriptor& s, std::vector<double> c) {
  return make_vector(s, std::move(c));
}

Vector at(const MappingSpec& m, std::vector<double> c) {
  return m.evaluate(vec(m.body.space, std::move(c)));
}

}  // namespace

TEST_CASE("zoo lookup and names") {
  const auto names = zoo_names();
  CHECK(names.size() == 8);
  CHECK(std::count(names.begin(), names.end(), "interval_threshold") == 1);
  CHECK(std::count(names.begin(), names.end(), "two_point_snap") == 1);
  for (const auto& n : names) CHECK(zoo_map(n).name == n);
  CHECK(mapping_zoo().size() == names.size());
  CHECK_THROWS_AS(zoo_map("no_such_map"), InputError);
}

TEST_CASE("interval threshold map sends the special point to 1 and the rest to 0") {
  const auto m = make_interval_threshold();
  CHECK(at(m, {3.0}).coords[0] == 1.0);
  CHECK(at(m, {2.99}).coords[0] == 0.0);
  CHECK(at(m, {0.0}).coords[0] == 0.0);
  CHECK(at(m, {1.5}).coords[0] == 0.0);
}

TEST_CASE("affine members of the zoo evaluate exactly") {
  CHECK(at(make_contraction_half(), {0.8}).coords[0] == 0.4);
  CHECK(at(make_identity_map(), {-0.3}).coords[0] == -0.3);
  CHECK(at(make_negation(), {0.7}).coords[0] == -0.7);
}

TEST_CASE("plane rotation turns by the stated angle") {
  const auto m = make_plane_rotation(3.141592653589793 / 6.0, 0.15);
  const auto y = at(m, {0.15, 0.0});
  CHECK(y.coords[0] == doctest::Approx(0.15 * std::sqrt(3.0) / 2.0).epsilon(1e-15));
  CHECK(y.coords[1] == doctest::Approx(0.075).epsilon(1e-15));
  // rotation preserves the euclidean norm
  CHECK(norm(y) == doctest::Approx(0.15).epsilon(1e-12));
}

TEST_CASE("coordinate shifts cycle or truncate") {
  const auto cyc = make_cyclic_shift(3, 0.2);
  const auto y = at(cyc, {0.1, 0.05, -0.05});
  CHECK(y.coords == std::vector<double>{-0.05, 0.1, 0.05});

  const auto tr = make_truncating_shift(3, 0.2);
  const auto z = at(tr, {0.1, 0.05, -0.05});
  CHECK(z.coords == std::vector<double>{0.0, 0.1, 0.05});
}

TEST_CASE("finite table snaps to the nearest sample with lowest-index ties") {
  const auto m = make_two_point_snap();
  CHECK(at(m, {0.4}).coords[0] == 0.0);
  CHECK(at(m, {0.6}).coords[0] == 1.0);
  // 0.5 is equidistant from both table entries; the first one wins
  CHECK(at(m, {0.5}).coords[0] == 0.0);
}

TEST_CASE("evaluate enforces the self-map contract") {
  const auto m = make_contraction_half();
  // input outside the body
  CHECK_THROWS_AS(m.evaluate(vec(m.body.space, {5.0})), MappingError);
  // dimension mismatch is malformed input, not a body escape
  const auto l2 = SpaceDescriptor::lp(2.0, 2);
  CHECK_THROWS_AS(m.evaluate(vec(l2, {0.1, 0.1})), InputError);

  // a rule whose output escapes the body is a hard error
  MappingSpec bad;
  bad.name = "escape";
  bad.body = ConvexBody::box(SpaceDescriptor::lp(2.0, 1), {0.0}, {1.0});
  bad.rule = AffineRule{{1.0}, {2.0}};
  CHECK_THROWS_AS(bad.evaluate(vec(bad.body.space, {0.5})), MappingError);
}

TEST_CASE("closure rules evaluate through the same contract") {
  MappingSpec m;
  m.name = "clamped_square";
  m.body = ConvexBody::box(SpaceDescriptor::lp(2.0, 1), {0.0}, {1.0});
  m.rule = ClosureRule{[](const Vector& x) {
    return make_vector(x.space, {x.coords[0] * x.coords[0]});
  }};
  CHECK(at(m, {0.5}).coords[0] == 0.25);
  CHECK_THROWS_AS(m.evaluate(vec(m.body.space, {2.0})), MappingError);
}

TEST_CASE("rescaling conjugates the map exactly: S y = T(r y) / r") {
  SUBCASE("threshold rule stays a threshold rule") {
    const auto m = make_interval_threshold();
    const auto s = rescale_map(m, 3.0);
    CHECK(s.name == "interval_threshold@rescaled");
    // body [0,3] shrinks to [0,1]
    CHECK(s.body.contains(vec(s.body.space, {1.0})));
    CHECK_FALSE(s.body.contains(vec(s.body.space, {1.5})));
    CHECK(at(s, {1.0}).coords[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(at(s, {0.5}).coords[0] == 0.0);
  }
  SUBCASE("affine rule keeps its matrix and scales the offset") {
    MappingSpec m;
    m.name = "affine_with_offset";
    m.body = ConvexBody::box(SpaceDescriptor::lp(2.0, 1), {0.0}, {2.0});
    m.rule = AffineRule{{0.5}, {0.5}};
    const auto s = rescale_map(m, 2.0);
    const auto* rule = std::get_if<AffineRule>(&s.rule);
    REQUIRE(rule != nullptr);
    CHECK(rule->matrix == std::vector<double>{0.5});
    CHECK(rule->offset == std::vector<double>{0.25});
  }
  SUBCASE("table rule rescales both columns") {
    const auto s = rescale_map(make_two_point_snap(), 2.0);
    // table becomes {0 -> 0, 0.5 -> 0.5}; 0.3 is nearer to 0.5
    CHECK(at(s, {0.3}).coords[0] == 0.5);
    CHECK(at(s, {0.2}).coords[0] == 0.0);
  }
  SUBCASE("shift rule is scale-invariant") {
    const auto s = rescale_map(make_cyclic_shift(3, 0.2), 4.0);
    const auto y = at(s, {0.01, 0.02, 0.03});
    CHECK(y.coords == std::vector<double>{0.03, 0.01, 0.02});
  }
  SUBCASE("conjugation identity holds pointwise for every rule kind") {
    const double r = 2.5;
    for (const auto& name : zoo_names()) {
      const auto m = zoo_map(name);
      const auto s = rescale_map(m, r);
      const auto [lo, hi] = m.body.bounding_box();
      // probe the midpoint of the original body
      std::vector<double> mid(lo.size());
      for (std::size_t i = 0; i < lo.size(); ++i) mid[i] = 0.5 * (lo[i] + hi[i]);
      const Vector x = vec(m.body.space, mid);
      REQUIRE(m.body.contains(x));
      const Vector tx = m.evaluate(x);
      const Vector sy = s.evaluate(vec(s.body.space, scale(1.0 / r, x).coords));
      for (std::size_t i = 0; i < mid.size(); ++i) {
        CHECK(sy.coords[i] == doctest::Approx(tx.coords[i] / r).epsilon(1e-12));
      }
    }
  }
  SUBCASE("non-positive factors are rejected") {
    CHECK_THROWS_AS(rescale_map(make_identity_map(), 0.0), InputError);
    CHECK_THROWS_AS(rescale_map(make_identity_map(), -1.0), InputError);
  }
}
