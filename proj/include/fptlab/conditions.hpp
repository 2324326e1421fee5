#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fptlab/mapping.hpp"
#include "fptlab/space.hpp"

namespace fptlab {

enum class ConditionVerdict { NoViolationFound, Violated };

// One witnessed failure: the pair of grid points with the compared norms.
// Replayable: re-evaluating the mapping at (x, y) reproduces lhs and rhs
// within 1e-12.
struct PairViolation {
  std::vector<double> x;
  std::vector<double> y;
  double lhs = 0.0;
  double rhs = 0.0;
};

// Result of a grid check. Grid evidence is one-sided: no_violation_found
// attests the condition on the grid only, never on the whole body.
// verdict == Violated exactly when `violations` is nonempty; violations are
// sorted lexicographically by (x, y) so reports are stable under any
// evaluation order.
struct ConditionReport {
  std::string condition;  // "nonexpansive" | "C" | "C_lambda" | "L_witness"
  double lambda = 0.0;    // populated for the C family
  double resolution = 0.0;
  std::uint64_t pairs_checked = 0;
  std::vector<PairViolation> violations;
  ConditionVerdict verdict = ConditionVerdict::NoViolationFound;
};

// Minimal nearest-neighbour spacing of the grid (0 for fewer than 2 points).
double grid_resolution(const std::vector<Vector>& grid);

// Records every ordered pair with |Tx - Ty| > |x - y| + tau.
ConditionReport check_nonexpansive(const MappingSpec& map, const std::vector<Vector>& grid);

// Premise-gated nonexpansiveness over ordered pairs:
//   lambda |x - Tx| <= |x - y| + tau  =>  |Tx - Ty| <= |x - y| + tau.
// The slack is applied additively on both premise and conclusion so
// floating-point ties at the premise boundary cannot manufacture violations.
// lambda = 1/2 is the classical condition (C).
ConditionReport check_condition_c_lambda(const MappingSpec& map, double lambda,
                                         const std::vector<Vector>& grid);

// Sampled witness for the limit-comparison condition: for every probe x,
//   max over the last `tail_window` entries of |x_n - Tx|
//     <= max over the same window of |x_n - x| + tau.
// The tail is a caller-supplied approximate fixed point sequence; the check
// certifies one witness sequence, nothing more.
ConditionReport check_condition_l_witness(const MappingSpec& map,
                                          const std::vector<Vector>& afps_tail,
                                          const std::vector<Vector>& probes,
                                          std::size_t tail_window);

}  // namespace fptlab
