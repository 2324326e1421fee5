#include "fptlab/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fptlab/errors.hpp"
#include "fptlab/parallel.hpp"

namespace fptlab {

namespace {

bool lex_less(const PairViolation& a, const PairViolation& b) {
  if (a.x != b.x) return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
  return std::lexicographical_compare(a.y.begin(), a.y.end(), b.y.begin(), b.y.end());
}

void finalize(ConditionReport& report) {
  std::sort(report.violations.begin(), report.violations.end(), lex_less);
  report.verdict = report.violations.empty() ? ConditionVerdict::NoViolationFound
                                             : ConditionVerdict::Violated;
}

std::vector<Vector> evaluate_grid(const MappingSpec& map, const std::vector<Vector>& grid) {
  std::vector<Vector> images;
  images.reserve(grid.size());
  for (const auto& x : grid) images.push_back(map.evaluate(x));
  return images;
}

}  // namespace

double grid_resolution(const std::vector<Vector>& grid) {
  if (grid.size() < 2) return 0.0;
  double res = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      res = std::min(res, distance(grid[i], grid[j]));
    }
  }
  return res;
}

ConditionReport check_nonexpansive(const MappingSpec& map, const std::vector<Vector>& grid) {
  if (grid.empty()) throw InputError("condition check needs a nonempty grid");
  const auto images = evaluate_grid(map, grid);
  const std::size_t n = grid.size();

  ConditionReport report;
  report.condition = "nonexpansive";
  report.resolution = grid_resolution(grid);
  report.pairs_checked = static_cast<std::uint64_t>(n) * (n - 1);

  std::vector<std::vector<PairViolation>> found(n);
  parallel_chunks(n, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double rhs = distance(grid[i], grid[j]);
        const double lhs = distance(images[i], images[j]);
        if (lhs > rhs + kTau) {
          found[i].push_back(PairViolation{grid[i].coords, grid[j].coords, lhs, rhs});
        }
      }
    }
  });
  for (auto& chunk : found) {
    report.violations.insert(report.violations.end(), chunk.begin(), chunk.end());
  }
  finalize(report);
  return report;
}

ConditionReport check_condition_c_lambda(const MappingSpec& map, double lambda,
                                         const std::vector<Vector>& grid) {
  if (!(lambda > 0.0) || !(lambda < 1.0)) throw InputError("lambda must lie in (0, 1)");
  if (grid.empty()) throw InputError("condition check needs a nonempty grid");
  const auto images = evaluate_grid(map, grid);
  const std::size_t n = grid.size();

  std::vector<double> displacement(n);  // |x - Tx| per grid point
  for (std::size_t i = 0; i < n; ++i) displacement[i] = distance(grid[i], images[i]);

  ConditionReport report;
  report.condition = lambda == 0.5 ? "C" : "C_lambda";
  report.lambda = lambda;
  report.resolution = grid_resolution(grid);
  report.pairs_checked = static_cast<std::uint64_t>(n) * (n - 1);

  std::vector<std::vector<PairViolation>> found(n);
  parallel_chunks(n, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double rhs = distance(grid[i], grid[j]);
        if (lambda * displacement[i] > rhs + kTau) continue;  // premise not met
        const double lhs = distance(images[i], images[j]);
        if (lhs > rhs + kTau) {
          found[i].push_back(PairViolation{grid[i].coords, grid[j].coords, lhs, rhs});
        }
      }
    }
  });
  for (auto& chunk : found) {
    report.violations.insert(report.violations.end(), chunk.begin(), chunk.end());
  }
  finalize(report);
  return report;
}

ConditionReport check_condition_l_witness(const MappingSpec& map,
                                          const std::vector<Vector>& afps_tail,
                                          const std::vector<Vector>& probes,
                                          std::size_t tail_window) {
  if (probes.empty()) throw InputError("condition check needs at least one probe");
  if (tail_window == 0) throw InputError("tail window must be positive");
  if (tail_window > afps_tail.size()) {
    throw InputError("tail window exceeds tail length (" + std::to_string(tail_window) +
                     " > " + std::to_string(afps_tail.size()) + ")");
  }
  const std::size_t begin = afps_tail.size() - tail_window;

  ConditionReport report;
  report.condition = "L_witness";
  report.resolution = grid_resolution(probes);
  report.pairs_checked = probes.size();

  for (const auto& x : probes) {
    const Vector tx = map.evaluate(x);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t n = begin; n < afps_tail.size(); ++n) {
      lhs = std::max(lhs, distance(afps_tail[n], tx));
      rhs = std::max(rhs, distance(afps_tail[n], x));
    }
    if (lhs > rhs + kTau) {
      report.violations.push_back(PairViolation{x.coords, tx.coords, lhs, rhs});
    }
  }
  finalize(report);
  return report;
}

}  // namespace fptlab
