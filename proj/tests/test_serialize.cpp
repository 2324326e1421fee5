#include <doctest.h>

#include <json.hpp>
#include <string>
#include <vector>

#include "fptlab/errors.hpp"
#include "fptlab/geometry.hpp"
#include "fptlab/ledger.hpp"
#include "fptlab/serialize.hpp"

using namespace fptlab;
using nlohmann::json;

TEST_CASE("space descriptors round-trip through json") {
  const SpaceDescriptor cases[] = {
      SpaceDescriptor::lp(2.0, 3), SpaceDescriptor::lp(1.0, 2),
      SpaceDescriptor::lp(3.5, 5), SpaceDescriptor::sup(4)};
  for (const auto& s : cases) {
    const auto j = to_json(s);
    CHECK(space_from_json(j) == s);
  }
  const auto j = to_json(SpaceDescriptor::sup(4));
  CHECK(j["kind"] == "sup_norm");
  CHECK(j["dimension"] == 4);
  CHECK_FALSE(j.contains("p"));  // meaningless for the sup norm, so omitted
}

TEST_CASE("space decoding rejects malformed documents") {
  CHECK_THROWS_AS(space_from_json(json{{"kind", "banach"}, {"dimension", 2}}), InputError);
  CHECK_THROWS_AS(space_from_json(json{{"kind", "p_norm"}, {"dimension", 2}}), InputError);
  CHECK_THROWS_AS(space_from_json(json{{"kind", "p_norm"}, {"dimension", 2}, {"p", 0.5}}),
                  InputError);
  CHECK_THROWS_AS(space_from_json(json::parse("[]")), InputError);
}

TEST_CASE("bodies round-trip through json in all three shapes") {
  const auto l2 = SpaceDescriptor::lp(2.0, 2);
  const ConvexBody cases[] = {
      ConvexBody::box(l2, {0.0, -1.0}, {1.0, 2.0}),
      ConvexBody::ball(l2, {0.5, 0.5}, 0.25),
      ConvexBody::hull(l2, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}})};
  for (const auto& body : cases) {
    const auto decoded = body_from_json(to_json(body));
    CHECK(decoded.space == body.space);
    CHECK(to_json(decoded).dump() == to_json(body).dump());
    // behavioral equality: same membership on a probe set
    const auto probes = sample_body(body, 20, 5);
    for (const auto& x : probes) CHECK(decoded.contains(x));
  }
  CHECK_THROWS_AS(body_from_json(json{{"type", "cone"}}), InputError);
}

TEST_CASE("named mapping rules round-trip and evaluate identically") {
  for (const auto& name : zoo_names()) {
    const auto m = zoo_map(name);
    const auto decoded = mapping_from_json(to_json(m));
    CHECK(decoded.name == m.name);
    const auto probes = sample_body(m.body, 10, 77);
    for (const auto& x : probes) {
      const auto a = m.evaluate(x);
      const auto b = decoded.evaluate(x);
      CHECK(a.coords == b.coords);  // bit-identical rules after a round-trip
    }
  }
}

TEST_CASE("closures encode their kind but refuse to decode") {
  MappingSpec m;
  m.name = "opaque";
  m.body = ConvexBody::box(SpaceDescriptor::lp(2.0, 1), {0.0}, {1.0});
  m.rule = ClosureRule{[](const Vector& x) { return x; }};
  const auto j = to_json(m);
  CHECK(j["rule"]["type"] == "closure");
  CHECK_THROWS_AS(mapping_from_json(j), InputError);

  CHECK_THROWS_AS(mapping_from_json(json{{"name", "x"}}), InputError);
}

TEST_CASE("condition reports serialize verdicts and violations") {
  const auto m = make_interval_threshold();
  const auto grid = lattice_grid(m.body, 0.25);
  const auto report = check_nonexpansive(m, grid);
  const auto j = to_json(report);
  CHECK(j["condition"] == "nonexpansive");
  CHECK(j["verdict"] == "violated");
  CHECK(j["pairs_checked"] == 156);
  REQUIRE(j["violations"].size() == 6);
  CHECK(j["violations"][0]["x"] == json::array({2.25}));
  CHECK(j["violations"][0]["y"] == json::array({3.0}));
  CHECK(j["violations"][0]["lhs"] == 1.0);
  CHECK(j["violations"][0]["rhs"] == 0.75);

  const auto clean = check_condition_c_lambda(m, 0.5, grid);
  const auto jc = to_json(clean);
  CHECK(jc["verdict"] == "no_violation_found");
  CHECK(jc["condition"] == "C");
  CHECK(jc["lambda"] == 0.5);

  CHECK(std::string(condition_verdict_name(ConditionVerdict::Violated)) == "violated");
  CHECK(std::string(condition_verdict_name(ConditionVerdict::NoViolationFound)) ==
        "no_violation_found");
}

TEST_CASE("step-bound constants serialize as plain integers") {
  const auto j = to_json(ar_bound(0.5, 0.5));
  CHECK(j["M"] == 5);
  CHECK(j["L"] == 64);
  CHECK(j["n0"] == 321);
  CHECK(j["delta"] == 0.5);
  CHECK(j["gamma"] == 0.5);
}

TEST_CASE("modulus estimates serialize values and the Schur escape") {
  const auto p2 = SpaceDescriptor::lp(2.0, 2);
  const auto j = to_json(modulus_d(p2, 0.1));
  CHECK(j["modulus"] == "d");
  CHECK(j["argument"] == 0.1);
  CHECK(j["value"].is_number());
  CHECK(j["schur_property"] == false);
  CHECK(j["direction"] == "exact_for_model");

  const auto l1 = SpaceDescriptor::lp(1.0, 2);
  const auto js = to_json(modulus_d(l1, 0.1));
  CHECK(js["value"].is_null());  // no number is the honest answer
  CHECK(js["schur_property"] == true);
  CHECK(js["witness"].is_string());
}

TEST_CASE("entailment reports serialize sweep evidence") {
  auto sampler = [](RngStream& rng) {
    return std::map<std::string, double>{{"x", rng.uniform(0.0, 2.0)}};
  };
  auto check = [](const std::map<std::string, double>& p) {
    CheckOutcome o;
    o.premise = true;
    o.holds = p.at("x") < 1.9;
    o.lhs = p.at("x");
    o.rhs = 1.9;
    return o;
  };
  const auto report = sweep_entailment("probe", "x in (0,2)", 200, 5, sampler, check);
  const auto j = to_json(report);
  CHECK(j["name"] == "probe");
  CHECK(j["region"] == "x in (0,2)");
  CHECK(j["samples"] == 200);
  CHECK(j["premise_hits"] == 200);
  CHECK(j["degenerate"] == false);
  CHECK(j["verdict"] == "violated");
  REQUIRE(!j["violations"].empty());
  const auto& v = j["violations"][0];
  CHECK(v.contains("sample_index"));
  CHECK(v["params"].contains("x"));
  CHECK(v["lhs"].is_number());
}

TEST_CASE("dumps are byte-stable for independently built equal values") {
  const auto m = make_interval_threshold();
  const auto grid = lattice_grid(m.body, 0.25);
  const auto a = to_json(check_condition_c_lambda(m, 0.25, grid)).dump();
  const auto b = to_json(check_condition_c_lambda(m, 0.25, grid)).dump();
  CHECK(a == b);

  const auto ja = to_json(zoo_map("two_point_snap")).dump();
  const auto jb = to_json(zoo_map("two_point_snap")).dump();
  CHECK(ja == jb);
}
