#include <doctest.h>

#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "fptlab/body.hpp"
#include "fptlab/conditions.hpp"
#include "fptlab/errors.hpp"
#include "fptlab/iteration.hpp"
#include "fptlab/mapping.hpp"
#include "fptlab/space.hpp"

using namespace fptlab;

namespace {

Vector vec(const SpaceDescriptor& s, std::vector<double> c) {
  return make_vector(s, std::move(c));
}

ConditionReport attest(const MappingSpec& map, double lambda, double step) {
  return check_condition_c_lambda(map, lambda, lattice_grid(map.body, step));
}

}  // namespace

TEST_CASE("averaged orbit of the half contraction is exact in binary") {
  const auto m = make_contraction_half();
  const auto trace = orbit(m, 0.5, vec(m.body.space, {1.0}), 3);
  REQUIRE(trace.iterates.size() == 4);
  // x_{i+1} = x + (1/2)(x/2 - x) = (3/4) x; every value is dyadic
  CHECK(trace.iterates[0].coords[0] == 1.0);
  CHECK(trace.iterates[1].coords[0] == 0.75);
  CHECK(trace.iterates[2].coords[0] == 0.5625);
  CHECK(trace.iterates[3].coords[0] == 0.421875);

  REQUIRE(trace.residuals.size() == 3);
  CHECK(trace.residuals[0] == 0.25);
  CHECK(trace.residuals[1] == 0.1875);
  CHECK(trace.residuals[2] == 0.140625);

  // t_residuals classify every iterate, including the last
  REQUIRE(trace.t_residuals.size() == 4);
  CHECK(trace.t_residuals[0] == 0.5);
  CHECK(trace.t_residuals[3] == 0.2109375);

  // residual = gamma * displacement along the whole trace
  for (std::size_t i = 0; i < trace.residuals.size(); ++i) {
    CHECK(std::fabs(trace.residuals[i] - trace.gamma * trace.t_residuals[i]) <= 1e-12);
  }
}

TEST_CASE("orbits are bitwise reproducible") {
  const auto m = make_plane_rotation(0.7, 0.15);
  const Vector x0 = vec(m.body.space, {0.1, 0.05});
  const auto a = orbit(m, 0.75, x0, 50);
  const auto b = orbit(m, 0.75, x0, 50);
  for (std::size_t i = 0; i < a.iterates.size(); ++i) {
    CHECK(a.iterates[i].coords == b.iterates[i].coords);
  }
}

TEST_CASE("orbit validates gamma, steps, and the start point") {
  const auto m = make_contraction_half();
  const Vector x0 = vec(m.body.space, {0.5});
  CHECK_THROWS_AS(orbit(m, 0.0, x0, 10), InputError);
  CHECK_THROWS_AS(orbit(m, 1.0, x0, 10), InputError);
  CHECK_THROWS_AS(orbit(m, 0.5, x0, 0), InputError);
  CHECK_THROWS_AS(orbit(m, 0.5, vec(m.body.space, {2.0}), 10), InputError);
}

TEST_CASE("averaged_map agrees with the orbit recurrence") {
  const auto m = make_negation();
  const auto avg = averaged_map(m, 0.25);
  const Vector x = vec(m.body.space, {0.8});
  // x + 0.25(-x - x) = 0.5 x
  CHECK(avg.evaluate(x).coords[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK_THROWS_AS(averaged_map(m, 0.0), InputError);
}

TEST_CASE("residual monotonicity requires a usable attestation") {
  const auto m = make_contraction_half();
  const auto trace = orbit(m, 0.5, vec(m.body.space, {1.0}), 20);

  SUBCASE("an attested half-displacement report certifies the trace") {
    const auto report = verify_residual_monotonicity(trace, attest(m, 0.5, 0.1));
    CHECK(report.monotone);
    CHECK_FALSE(report.first_failure.has_value());
    CHECK(report.max_increase <= 0.0);
  }
  SUBCASE("wrong condition family is refused") {
    auto bad = check_nonexpansive(m, lattice_grid(m.body, 0.1));
    CHECK_THROWS_AS(verify_residual_monotonicity(trace, bad), PreconditionError);
  }
  SUBCASE("a violated report is refused") {
    const auto snap = make_two_point_snap();
    const auto violated = attest(snap, 0.5, 0.05);
    REQUIRE(violated.verdict == ConditionVerdict::Violated);
    CHECK_THROWS_AS(verify_residual_monotonicity(trace, violated), PreconditionError);
  }
  SUBCASE("lambda above gamma is refused") {
    const auto low_gamma = orbit(m, 0.25, vec(m.body.space, {1.0}), 5);
    CHECK_THROWS_AS(verify_residual_monotonicity(low_gamma, attest(m, 0.5, 0.1)),
                    PreconditionError);
  }
}

TEST_CASE("monotonicity verdict reports the first increase") {
  // hand-built trace with a cooked residual bump; the attestation is genuine
  const auto m = make_contraction_half();
  auto trace = orbit(m, 0.5, vec(m.body.space, {1.0}), 4);
  trace.residuals = {0.1, 0.05, 0.5, 0.02};
  const auto report = verify_residual_monotonicity(trace, attest(m, 0.5, 0.1));
  CHECK_FALSE(report.monotone);
  REQUIRE(report.first_failure.has_value());
  CHECK(*report.first_failure == 1);
  CHECK(report.max_increase == doctest::Approx(0.45).epsilon(1e-12));
}

TEST_CASE("averaging identity deviation stays at rounding level") {
  const auto m = make_plane_rotation(0.7, 0.15);
  const auto trace = orbit(m, 0.75, vec(m.body.space, {0.1, 0.05}), 100);
  CHECK(verify_averaging_identity(trace, m) <= 1e-10);

  const auto c = make_contraction_half();
  const auto t2 = orbit(c, 0.5, vec(c.body.space, {1.0}), 50);
  CHECK(verify_averaging_identity(t2, c) <= 1e-10);
}

TEST_CASE("averaging identity refuses a foreign trace") {
  const auto m = make_contraction_half();
  const auto trace = orbit(m, 0.5, vec(m.body.space, {0.5}), 10);
  CHECK_THROWS_AS(verify_averaging_identity(trace, make_negation()), InputError);
}

TEST_CASE("uniform step-bound constants match hand computation") {
  SUBCASE("delta = gamma = 1/2") {
    const auto b = ar_bound(0.5, 0.5);
    CHECK(b.m == 5);
    CHECK(b.l == 64);
    CHECK(b.n0 == 321);
    const auto c = ar_constants(0.5, 0.5);
    CHECK(c.m == 5);
    CHECK(static_cast<double>(c.interval_width) == 0.015625);  // (1/2)^6
    CHECK(static_cast<double>(c.l) == 64.0);
    CHECK(static_cast<double>(c.n0) == 321.0);
  }
  SUBCASE("delta = 0.25, gamma = 0.5") {
    const auto b = ar_bound(0.25, 0.5);
    CHECK(b.m == 9);
    CHECK(b.l == 1024);
    CHECK(b.n0 == 9217);
  }
  SUBCASE("delta above 1 needs no iterations at all") {
    CHECK(ar_bound(1.5, 0.5).n0 == 0);
    CHECK(ar_bound(2.5, 0.9).n0 == 0);
  }
  SUBCASE("constants beyond uint64 are refused but stay representable in wide form") {
    CHECK_THROWS_AS(ar_bound(0.1, 0.9), InputError);
    const auto c = ar_constants(0.1, 0.9);
    CHECK(c.m == 21);
    CHECK(c.n0 > 9.2e18L);
    CHECK(std::isfinite(static_cast<double>(c.n0)));
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(ar_bound(0.0, 0.5), InputError);
    CHECK_THROWS_AS(ar_bound(0.5, 0.0), InputError);
    CHECK_THROWS_AS(ar_bound(0.5, 1.0), InputError);
  }
}

TEST_CASE("afps_extract keeps exactly the iterates within tolerance") {
  const auto m = make_contraction_half();
  const auto trace = orbit(m, 0.5, vec(m.body.space, {1.0}), 30);
  const auto pts = afps_extract(trace, 1e-3);
  CHECK(!pts.empty());
  std::size_t expected = 0;
  for (double t : trace.t_residuals)
    if (t <= 1e-3) ++expected;
  CHECK(pts.size() == expected);
  for (const auto& p : pts) {
    CHECK(distance(m.evaluate(p), p) <= 1e-3);
  }
  CHECK_THROWS_AS(afps_extract(trace, -1.0), InputError);
}

TEST_CASE("streaming scan agrees with the eager orbit") {
  const auto m = make_contraction_half();
  const Vector x0 = vec(m.body.space, {1.0});
  const std::vector<double> thresholds = {0.2, 0.05, 0.01};
  const auto scan = run_ar_scan(m, 0.5, x0, thresholds, 1000);
  const auto trace = orbit(m, 0.5, x0, 1000);

  REQUIRE(scan.first_step_below.size() == 3);
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    REQUIRE(scan.first_step_below[k].has_value());
    std::optional<std::uint64_t> expected;
    for (std::size_t i = 0; i < trace.residuals.size(); ++i) {
      if (trace.residuals[i] < thresholds[k]) {
        expected = i;
        break;
      }
    }
    CHECK(scan.first_step_below[k] == expected);
  }
  CHECK(scan.residuals_monotone);
  CHECK(scan.max_identity_deviation <= 1e-10);
  // stops as soon as the last threshold is reached
  CHECK(scan.steps_taken == *scan.first_step_below[2] + 1);
}

TEST_CASE("streaming scan reports unreached thresholds as empty") {
  const auto m = make_identity_map();
  const auto scan =
      run_ar_scan(m, 0.5, vec(m.body.space, {0.5}), {1.0, 1e-30}, 25);
  // the identity never moves: residuals are 0, below any positive threshold
  CHECK(scan.first_step_below[0] == std::uint64_t{0});
  CHECK(scan.first_step_below[1] == std::uint64_t{0});

  const auto rot = make_plane_rotation(0.7, 0.15);
  const auto stuck =
      run_ar_scan(rot, 0.5, vec(rot.body.space, {0.15, 0.0}), {1e-12}, 50);
  // a rotation orbit cannot reach a 1e-12 residual in 50 steps
  CHECK_FALSE(stuck.first_step_below[0].has_value());
  CHECK(stuck.steps_taken == 50);
  CHECK(stuck.final_residual > 1e-12);
}

TEST_CASE("csv dump has one row per iterate and leaves the last residual blank") {
  const auto m = make_contraction_half();
  const auto trace = orbit(m, 0.5, vec(m.body.space, {1.0}), 2);
  std::ostringstream out;
  write_orbit_csv(trace, out);
  CHECK(out.str() ==
        "step,coord_0,residual,t_residual\n"
        "0,1,0.25,0.5\n"
        "1,0.75,0.1875,0.375\n"
        "2,0.5625,,0.28125\n");
}
