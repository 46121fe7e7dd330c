#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "bogrid/error.hpp"
#include "bogrid/grid.hpp"
#include "bogrid/rng.hpp"
#include "bogrid/surrogate.hpp"

namespace bogrid {

// Masked cells carry this value in acquisition fields and are never selected.
inline constexpr double kMaskedSentinel = std::numeric_limits<double>::infinity();

struct AcquisitionResult {
  ScalarGrid field;
  Cell target;
  std::size_t tie_count = 1;
};

// Lower confidence bound a = f - u on valid cells.
inline ScalarGrid acquisition_field(const ScalarGrid& f, const ScalarGrid& u, const NavMask& mask) {
  require_same_shape(f, u, "acquisition_field f/u");
  require_same_shape(f, mask, "acquisition_field f/mask");
  ScalarGrid a(f.width(), f.height());
  auto fv = f.values();
  auto uv = u.values();
  auto av = a.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    av[i] = mask.valid_at(i) ? fv[i] - uv[i] : kMaskedSentinel;
  }
  return a;
}

// Argmin over valid cells; exact ties are broken uniformly with rng.
inline AcquisitionResult select_target(ScalarGrid a, const NavMask& mask, Rng& rng) {
  require_same_shape(a, mask, "select_target");
  auto av = a.values();
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < av.size(); ++i) {
    if (!mask.valid_at(i)) continue;
    if (ties.empty() || av[i] < best) {
      best = av[i];
      ties.assign(1, i);
    } else if (av[i] == best) {
      ties.push_back(i);
    }
  }
  if (ties.empty()) {
    throw Error(ErrorCode::EmptyMask, "no valid cell to select a target from");
  }
  const std::size_t pick = ties.size() == 1 ? ties.front() : ties[rng.uniform_index(ties.size())];
  const Cell target = a.cell(pick);
  return {std::move(a), target, ties.size()};
}

// One full BO step on the model: f, c, u, masked LCB, then the argmin.
inline AcquisitionResult next_target(const SurrogateState& s, Rng& rng) {
  const ScalarGrid f = predict_field(s);
  const ScalarGrid u = uncertainty_field(s);
  return select_target(acquisition_field(f, u, s.navmask()), s.navmask(), rng);
}

}  // namespace bogrid
