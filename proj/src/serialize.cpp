#include "fptlab/serialize.hpp"

#include <utility>

#include "fptlab/errors.hpp"

namespace fptlab {

namespace {

using nlohmann::json;

// Any malformed document becomes an InputError so callers map it to the
// input-error exit path uniformly.
template <typename Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

json to_json(const SpaceDescriptor& space) {
  json j;
  j["dimension"] = space.dimension;
  if (space.kind == NormKind::SupNorm) {
    j["kind"] = "sup_norm";
  } else {
    j["kind"] = "p_norm";
    j["p"] = space.p;
  }
  return j;
}

SpaceDescriptor space_from_json(const json& j) {
  return guarded("space", [&] {
    const std::string kind = j.at("kind").get<std::string>();
    const int dimension = j.at("dimension").get<int>();
    if (kind == "sup_norm") return SpaceDescriptor::sup(dimension);
    if (kind == "p_norm") return SpaceDescriptor::lp(j.at("p").get<double>(), dimension);
    throw InputError("unknown space kind: " + kind);
  });
}

json to_json(const ConvexBody& body) {
  json shape;
  if (const auto* box = std::get_if<BoxShape>(&body.shape)) {
    shape["type"] = "box";
    shape["lower"] = box->lower;
    shape["upper"] = box->upper;
  } else if (const auto* ball = std::get_if<BallShape>(&body.shape)) {
    shape["type"] = "ball";
    shape["center"] = ball->center;
    shape["radius"] = ball->radius;
  } else {
    const auto& hull = std::get<HullShape>(body.shape);
    shape["type"] = "hull";
    shape["points"] = hull.points;
  }
  json j;
  j["space"] = to_json(body.space);
  j["shape"] = std::move(shape);
  return j;
}

ConvexBody body_from_json(const json& j) {
  return guarded("body", [&] {
    const SpaceDescriptor space = space_from_json(j.at("space"));
    const json& shape = j.at("shape");
    const std::string type = shape.at("type").get<std::string>();
    if (type == "box") {
      return ConvexBody::box(space, shape.at("lower").get<std::vector<double>>(),
                             shape.at("upper").get<std::vector<double>>());
    }
    if (type == "ball") {
      return ConvexBody::ball(space, shape.at("center").get<std::vector<double>>(),
                              shape.at("radius").get<double>());
    }
    if (type == "hull") {
      return ConvexBody::hull(space,
                              shape.at("points").get<std::vector<std::vector<double>>>());
    }
    throw InputError("unknown body shape: " + type);
  });
}

json to_json(const MappingSpec& map) {
  json rule;
  if (const auto* affine = std::get_if<AffineRule>(&map.rule)) {
    rule["type"] = "affine";
    rule["matrix"] = affine->matrix;
    rule["offset"] = affine->offset;
  } else if (const auto* thr = std::get_if<IntervalThresholdRule>(&map.rule)) {
    rule["type"] = "interval_threshold";
    rule["regular_value"] = thr->regular_value;
    rule["special_point"] = thr->special_point;
    rule["special_value"] = thr->special_value;
  } else if (const auto* shift = std::get_if<CoordinateShiftRule>(&map.rule)) {
    rule["type"] = "coordinate_shift";
    rule["cyclic"] = shift->cyclic;
  } else if (const auto* table = std::get_if<FiniteTableRule>(&map.rule)) {
    rule["type"] = "finite_table";
    json pairs = json::array();
    for (const auto& [from, to] : table->pairs) {
      json entry;
      entry["from"] = from;
      entry["to"] = to;
      pairs.push_back(std::move(entry));
    }
    rule["pairs"] = std::move(pairs);
  } else {
    rule["type"] = "closure";
  }
  json j;
  j["name"] = map.name;
  j["body"] = to_json(map.body);
  j["rule"] = std::move(rule);
  return j;
}

MappingSpec mapping_from_json(const json& j) {
  return guarded("mapping", [&] {
    MappingSpec map;
    map.name = j.at("name").get<std::string>();
    map.body = body_from_json(j.at("body"));
    const json& rule = j.at("rule");
    const std::string type = rule.at("type").get<std::string>();
    if (type == "affine") {
      map.rule = AffineRule{rule.at("matrix").get<std::vector<double>>(),
                            rule.at("offset").get<std::vector<double>>()};
    } else if (type == "interval_threshold") {
      map.rule = IntervalThresholdRule{rule.at("regular_value").get<std::vector<double>>(),
                                       rule.at("special_point").get<std::vector<double>>(),
                                       rule.at("special_value").get<std::vector<double>>()};
    } else if (type == "coordinate_shift") {
      map.rule = CoordinateShiftRule{rule.at("cyclic").get<bool>()};
    } else if (type == "finite_table") {
      FiniteTableRule table;
      for (const json& entry : rule.at("pairs")) {
        table.pairs.emplace_back(entry.at("from").get<std::vector<double>>(),
                                 entry.at("to").get<std::vector<double>>());
      }
      map.rule = std::move(table);
    } else if (type == "closure") {
      throw InputError("closure rules cannot be decoded from JSON");
    } else {
      throw InputError("unknown rule type: " + type);
    }
    return map;
  });
}

const char* condition_verdict_name(ConditionVerdict v) {
  return v == ConditionVerdict::Violated ? "violated" : "no_violation_found";
}

json to_json(const ConditionReport& report) {
  json j;
  j["condition"] = report.condition;
  j["lambda"] = report.lambda;
  j["resolution"] = report.resolution;
  j["pairs_checked"] = report.pairs_checked;
  j["verdict"] = condition_verdict_name(report.verdict);
  json violations = json::array();
  for (const PairViolation& v : report.violations) {
    json entry;
    entry["x"] = v.x;
    entry["y"] = v.y;
    entry["lhs"] = v.lhs;
    entry["rhs"] = v.rhs;
    violations.push_back(std::move(entry));
  }
  j["violations"] = std::move(violations);
  return j;
}

json to_json(const ARBound& bound) {
  json j;
  j["delta"] = bound.delta;
  j["gamma"] = bound.gamma;
  j["M"] = bound.m;
  j["L"] = bound.l;
  j["n0"] = bound.n0;
  return j;
}

json to_json(const ModulusEstimate& estimate) {
  json j;
  j["modulus"] = modulus_name(estimate.modulus);
  j["argument"] = estimate.argument;
  j["anchor_norm"] = estimate.anchor_norm;
  if (estimate.value) {
    j["value"] = *estimate.value;
  } else {
    j["value"] = nullptr;
  }
  j["direction"] = direction_name(estimate.direction);
  j["witness"] = estimate.witness;
  j["schur_property"] = estimate.schur_property;
  return j;
}

json to_json(const EntailmentReport& report) {
  json j;
  j["name"] = report.name;
  j["region"] = report.region;
  j["samples"] = report.samples;
  j["premise_hits"] = report.premise_hits;
  j["verdict"] = entailment_verdict_name(report.verdict);
  j["degenerate"] = report.degenerate;
  json violations = json::array();
  for (const SampleViolation& v : report.violations) {
    json entry;
    entry["sample_index"] = v.sample_index;
    entry["params"] = v.params;
    entry["lhs"] = v.lhs;
    entry["rhs"] = v.rhs;
    entry["detail"] = v.detail;
    violations.push_back(std::move(entry));
  }
  j["violations"] = std::move(violations);
  return j;
}

}  // namespace fptlab
