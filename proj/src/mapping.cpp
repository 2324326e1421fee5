#include "fptlab/mapping.hpp"

#include <cmath>
#include <limits>

#include "fptlab/errors.hpp"

namespace fptlab {

namespace {

Vector apply_rule(const MappingSpec& map, const Vector& x) {
  const auto dim = static_cast<std::size_t>(map.body.space.dimension);

  if (const auto* a = std::get_if<AffineRule>(&map.rule)) {
    Vector y;
    y.space = map.body.space;
    y.coords.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      double s = a->offset[i];
      for (std::size_t j = 0; j < dim; ++j) s += a->matrix[i * dim + j] * x.coords[j];
      y.coords[i] = s;
    }
    return y;
  }

  if (const auto* t = std::get_if<IntervalThresholdRule>(&map.rule)) {
    bool at_special = true;
    for (std::size_t i = 0; i < dim; ++i) {
      if (std::fabs(x.coords[i] - t->special_point[i]) > kTau) {
        at_special = false;
        break;
      }
    }
    Vector y;
    y.space = map.body.space;
    y.coords = at_special ? t->special_value : t->regular_value;
    return y;
  }

  if (const auto* s = std::get_if<CoordinateShiftRule>(&map.rule)) {
    Vector y;
    y.space = map.body.space;
    y.coords.resize(dim);
    y.coords[0] = s->cyclic ? x.coords[dim - 1] : 0.0;
    for (std::size_t i = 1; i < dim; ++i) y.coords[i] = x.coords[i - 1];
    return y;
  }

  if (const auto* ft = std::get_if<FiniteTableRule>(&map.rule)) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ft->pairs.size(); ++i) {
      Vector from{ft->pairs[i].first, map.body.space};
      const double d = distance(x, from);
      if (d < best_d) {  // strict keeps the lowest index on ties
        best_d = d;
        best = i;
      }
    }
    return Vector{ft->pairs[best].second, map.body.space};
  }

  const auto& c = std::get<ClosureRule>(map.rule);
  return c.fn(x);
}

}  // namespace

Vector MappingSpec::evaluate(const Vector& x) const {
  if (x.coords.size() != static_cast<std::size_t>(body.space.dimension)) {
    throw InputError("argument dimension does not match the mapping's space");
  }
  Vector y = apply_rule(*this, x);
  for (double c : y.coords) {
    if (!std::isfinite(c)) throw MappingError("mapping '" + name + "' produced a non-finite value");
  }
  if (!body.contains(y, 1e-9)) {
    throw MappingError("mapping '" + name + "' left its body");
  }
  return y;
}

namespace {

std::vector<double> scaled(const std::vector<double>& v, double s) {
  std::vector<double> r = v;
  for (double& c : r) c *= s;
  return r;
}

ConvexBody scale_body(const ConvexBody& body, double s) {
  if (const auto* b = std::get_if<BoxShape>(&body.shape)) {
    return ConvexBody::box(body.space, scaled(b->lower, s), scaled(b->upper, s));
  }
  if (const auto* b = std::get_if<BallShape>(&body.shape)) {
    return ConvexBody::ball(body.space, scaled(b->center, s), s * b->radius);
  }
  const auto& h = std::get<HullShape>(body.shape);
  std::vector<std::vector<double>> pts;
  pts.reserve(h.points.size());
  for (const auto& p : h.points) pts.push_back(scaled(p, s));
  return ConvexBody::hull(body.space, std::move(pts));
}

}  // namespace

MappingSpec rescale_map(const MappingSpec& map, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InputError("rescale factor must be positive");
  const double inv = 1.0 / r;

  MappingSpec out;
  out.name = map.name + "@rescaled";
  out.body = scale_body(map.body, inv);

  if (const auto* a = std::get_if<AffineRule>(&map.rule)) {
    // (1/r)(A(ry) + b) = A y + b/r
    out.rule = AffineRule{a->matrix, scaled(a->offset, inv)};
  } else if (const auto* t = std::get_if<IntervalThresholdRule>(&map.rule)) {
    out.rule = IntervalThresholdRule{scaled(t->regular_value, inv),
                                     scaled(t->special_point, inv),
                                     scaled(t->special_value, inv)};
  } else if (const auto* s = std::get_if<CoordinateShiftRule>(&map.rule)) {
    out.rule = *s;  // linear, scale-invariant
  } else if (const auto* ft = std::get_if<FiniteTableRule>(&map.rule)) {
    FiniteTableRule scaled_table;
    scaled_table.pairs.reserve(ft->pairs.size());
    for (const auto& [from, to] : ft->pairs) {
      scaled_table.pairs.emplace_back(scaled(from, inv), scaled(to, inv));
    }
    out.rule = std::move(scaled_table);
  } else {
    MappingSpec inner = map;  // keep a copy alive inside the closure
    out.rule = ClosureRule{[inner, r, inv](const Vector& y) {
      Vector x = scale(r, y);
      Vector ty = inner.evaluate(x);
      return scale(inv, ty);
    }};
  }
  return out;
}

MappingSpec make_interval_threshold() { return make_interval_threshold(0.0, 3.0, 0.0, 3.0, 1.0); }

MappingSpec make_interval_threshold(double lo, double hi, double regular,
                                    double special_point, double special_value) {
  MappingSpec m;
  m.name = "interval_threshold";
  m.body = ConvexBody::box(SpaceDescriptor::lp(2.0, 1), {lo}, {hi});
  m.rule = IntervalThresholdRule{{regular}, {special_point}, {special_value}};
  return m;
}

MappingSpec make_contraction_half() {
  MappingSpec m;
  m.name = "contraction_half";
  m.body = ConvexBody::box(SpaceDescriptor::lp(2.0, 1), {-1.0}, {1.0});
  m.rule = AffineRule{{0.5}, {0.0}};
  return m;
}

MappingSpec make_identity_map() {
  MappingSpec m;
  m.name = "identity";
  m.body = ConvexBody::box(SpaceDescriptor::lp(2.0, 1), {-1.0}, {1.0});
  m.rule = AffineRule{{1.0}, {0.0}};
  return m;
}

MappingSpec make_negation() {
  MappingSpec m;
  m.name = "negation";
  m.body = ConvexBody::box(SpaceDescriptor::lp(2.0, 1), {-1.0}, {1.0});
  m.rule = AffineRule{{-1.0}, {0.0}};
  return m;
}

MappingSpec make_plane_rotation(double angle, double radius) {
  MappingSpec m;
  m.name = "plane_rotation";
  m.body = ConvexBody::ball(SpaceDescriptor::lp(2.0, 2), {0.0, 0.0}, radius);
  const double c = std::cos(angle), s = std::sin(angle);
  m.rule = AffineRule{{c, -s, s, c}, {0.0, 0.0}};
  return m;
}

MappingSpec make_cyclic_shift(int dimension, double radius) {
  MappingSpec m;
  m.name = "cyclic_shift";
  m.body = ConvexBody::ball(SpaceDescriptor::lp(2.0, dimension),
                            std::vector<double>(static_cast<std::size_t>(dimension), 0.0), radius);
  m.rule = CoordinateShiftRule{true};
  return m;
}

MappingSpec make_truncating_shift(int dimension, double radius) {
  MappingSpec m;
  m.name = "truncating_shift";
  m.body = ConvexBody::ball(SpaceDescriptor::lp(2.0, dimension),
                            std::vector<double>(static_cast<std::size_t>(dimension), 0.0), radius);
  m.rule = CoordinateShiftRule{false};
  return m;
}

MappingSpec make_two_point_snap() {
  MappingSpec m;
  m.name = "two_point_snap";
  m.body = ConvexBody::box(SpaceDescriptor::lp(2.0, 1), {0.0}, {1.0});
  m.rule = FiniteTableRule{{{{0.0}, {0.0}}, {{1.0}, {1.0}}}};
  return m;
}

std::vector<MappingSpec> mapping_zoo() {
  return {
      make_interval_threshold(),
      make_contraction_half(),
      make_identity_map(),
      make_negation(),
      make_plane_rotation(0.5235987755982988, 0.15),  // pi/6
      make_cyclic_shift(3, 0.05),
      make_truncating_shift(3, 0.05),
      make_two_point_snap(),
  };
}

MappingSpec zoo_map(const std::string& name) {
  for (auto& m : mapping_zoo()) {
    if (m.name == name) return m;
  }
  throw InputError("unknown zoo mapping '" + name + "'");
}

std::vector<std::string> zoo_names() {
  std::vector<std::string> names;
  for (const auto& m : mapping_zoo()) names.push_back(m.name);
  return names;
}

}  // namespace fptlab
