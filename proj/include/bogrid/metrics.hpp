#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "bogrid/error.hpp"
#include "bogrid/grid.hpp"

namespace bogrid {

struct RunMetrics {
  double coverage = 0.0;
  double dist_uniform = 0.0;
  std::int64_t ghost_passes = 0;
  std::int64_t steps = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

// Fraction of NavMesh-valid cells visited at least once.
inline double coverage(const ScalarGrid& occupancy, const NavMask& mask) {
  require_same_shape(occupancy, mask, "coverage");
  std::size_t valid = 0, visited = 0;
  auto occ = occupancy.values();
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (!mask.valid_at(i)) continue;
    ++valid;
    if (occ[i] > 0.0) ++visited;
  }
  if (valid == 0) throw Error(ErrorCode::EmptyMask, "coverage over a mask with no valid cells");
  return static_cast<double>(visited) / static_cast<double>(valid);
}

// Total-variation distance between heat (restricted to valid cells, normalized)
// and the uniform distribution over valid cells.
inline double distance_to_uniform(const ScalarGrid& heat, const NavMask& mask) {
  require_same_shape(heat, mask, "distance_to_uniform");
  auto h = heat.values();
  std::size_t n = 0;
  double total = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (mask.valid_at(i)) {
      ++n;
      total += h[i];
    }
  }
  if (n == 0) throw Error(ErrorCode::EmptyMask, "distance_to_uniform over an empty mask");
  if (!(total > 0.0)) {
    throw Error(ErrorCode::UndefinedDistribution, "no heat on valid cells");
  }
  // Half the L1 distance equals the positive excess mass, sum_{p > 1/N} (p - 1/N).
  // Scaling by N * total keeps the single-cell and uniform cases exact.
  const double n_cells = static_cast<double>(n);
  double excess = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (mask.valid_at(i)) excess += std::max(0.0, h[i] * n_cells - total);
  }
  return excess / (n_cells * total);
}

inline double normalize_vs_baseline(double metric, double baseline_metric) {
  if (baseline_metric == 0.0) {
    throw Error(ErrorCode::DivideByZero, "baseline metric is zero");
  }
  if (!(baseline_metric > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "baseline metric must be positive");
  }
  return metric / baseline_metric;
}

}  // namespace bogrid
