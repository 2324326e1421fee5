#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fptlab/space.hpp"

namespace fptlab {

// Asymptotic model of a weakly null sequence: disjointly supported blocks of
// common norm c beside an anchor vector on its own support. Supports being
// disjoint, limit norms depend only on the anchor's norm, the block norm and
// the exponent, which is what makes every modulus below closed-form.
//
// l_1 is excluded: it has the Schur property, so weakly null unit-sphere
// sequences do not exist and block asymptotics are meaningless there.
struct BlockSequenceModel {
  SpaceDescriptor space;   // PNorm with p in (1, inf), or SupNorm
  double block_norm = 1.0;  // c >= 0
  double anchor_norm = 0.0;

  // limsup_n limsup_m |y_n - y_m|: 2^{1/p} c for p-norms, c for the sup norm.
  double separation() const;
  // Unit-ball class membership: blocks in B_X with separation <= 1.
  bool in_unit_ball_class() const;
};

BlockSequenceModel make_block_model(const SpaceDescriptor& space, double block_norm,
                                    double anchor_norm);

// lim_n |alpha x + beta y_n| in the block model.
double limit_norm(const BlockSequenceModel& model, double alpha, double beta);

enum class ModulusTag { d, b, b1, R, M, RW, MW, J };

enum class BoundDirection {
  LowerBoundOfSup,  // grid-restricted suprema (M, MW, J)
  UpperBoundOfInf,
  ExactForModel,    // closed forms of the block model
};

struct ModulusEstimate {
  ModulusTag modulus = ModulusTag::d;
  double argument = 0.0;     // eps or a
  double anchor_norm = 1.0;
  std::optional<double> value;  // empty when schur_property
  BoundDirection direction = BoundDirection::ExactForModel;
  std::string witness;
  bool schur_property = false;  // l_1 request: no numbers, by design
};

// d(eps, x), x on the unit sphere: infimum of lim |x + eps y_n| - 1 over
// weakly null unit-sphere block sequences. eps <= 0 is an error.
ModulusEstimate modulus_d(const SpaceDescriptor& space, double eps);

// b1(eps, x): supremum of lim |x + eps y_n| - |x| over unit-ball block
// sequences with separation <= 1. eps = 0 is allowed (value 0).
ModulusEstimate modulus_b1(const SpaceDescriptor& space, double eps, double anchor_norm);

// b(eps, x): as b1 but over unit-sphere block sequences (no separation cap).
ModulusEstimate modulus_b(const SpaceDescriptor& space, double eps, double anchor_norm);

// R(a): sup of lim |x + y_n| over |x| <= a and unit-ball block sequences with
// separation <= 1.
ModulusEstimate r_coefficient(const SpaceDescriptor& space, double a);

// M = sup over the grid of (1 + a) / R(a); lowest-index argmax on ties.
ModulusEstimate m_coefficient(const SpaceDescriptor& space, const std::vector<double>& a_grid);

// RW(a): sup of min(lim |y_n + x|, lim |y_n - x|) over |x| <= a and unit-ball
// block sequences (no separation cap). MW = sup of (1 + a) / RW(a).
ModulusEstimate rw_coefficient(const SpaceDescriptor& space, double a);
ModulusEstimate mw_coefficient(const SpaceDescriptor& space, const std::vector<double>& a_grid);

// Sphere-pair search for the James constant sup min(|x+y|, |x-y|) in the
// finite-dimensional space: canonical candidates (basis vectors, sign
// corners) plus a deterministic sweep, then seeded local refinement.
// dimension >= 2 and resolution >= 8 required.
ModulusEstimate james_constant(const SpaceDescriptor& space, int resolution,
                               std::uint64_t seed = 0);

// Cross-check of R(a) against sup_{|x| <= a} (b1(1, x) + |x|) on an s-grid.
double r_from_b1_crosscheck(const SpaceDescriptor& space, double a, double s_step = 1e-3);

// Estimator-level equivalence on a grid:
//   M > 1  <=>  exists a > 0 with R(a) < 1 + a  <=>  that holds for all a > 0.
struct RCoefficientEquivalence {
  double m_value = 0.0;
  bool m_above_one = false;
  bool exists_strict = false;
  bool all_strict = false;
  bool consistent = false;
};
RCoefficientEquivalence r_coefficient_equivalence(const SpaceDescriptor& space,
                                                  const std::vector<double>& a_grid);

// Disjunction witness: some t in the grid has d(eps, x) >= t or b(t, x) <= eps t.
struct NuncReport {
  bool satisfied = false;
  bool schur_property = false;
  double t = 0.0;
  std::string branch;  // "d_branch" | "b_branch" | "schur_property"
  double d_value = 0.0;
  double b_value = 0.0;
};
NuncReport nunc_witness(const SpaceDescriptor& space, double eps,
                        const std::vector<double>& t_grid);

// Generic maximizer: coarse grid pass then golden-section refinement around
// the best cell. This is the reference path the closed forms are checked
// against; it only ever consumes the objective.
struct ScalarMaximum {
  double x = 0.0;
  double value = 0.0;
};
ScalarMaximum maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              double step);

// Inclusive uniform grid (the upper endpoint is always included).
std::vector<double> uniform_grid(double lo, double hi, double step);

const char* modulus_name(ModulusTag tag);
const char* direction_name(BoundDirection dir);

}  // namespace fptlab
