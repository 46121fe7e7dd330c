#pragma once

// Independent reference implementations used only by tests. They share no code
// path with the library beyond the ScalarGrid container.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "bogrid/grid.hpp"

namespace oracle {

inline double gaussian(double d, double sigma) { return std::exp(-d * d / (2.0 * sigma * sigma)); }

// Direct 2D sum: out[c] = sum_j grid[j] * K(dx) * K(dy), restricted to |dx|,|dy| <= radius.
inline bogrid::ScalarGrid direct_convolve(const bogrid::ScalarGrid& g, double sigma, int radius) {
  bogrid::ScalarGrid out(g.width(), g.height());
  for (int cy = 0; cy < g.height(); ++cy) {
    for (int cx = 0; cx < g.width(); ++cx) {
      double acc = 0.0;
      for (int y = 0; y < g.height(); ++y) {
        for (int x = 0; x < g.width(); ++x) {
          const int dx = x - cx, dy = y - cy;
          if (std::abs(dx) > radius || std::abs(dy) > radius) continue;
          acc += g(x, y) * gaussian(dx, sigma) * gaussian(dy, sigma);
        }
      }
      out(cx, cy) = acc;
    }
  }
  return out;
}

// Total variation between normalized heat on valid cells and uniform, summed directly.
inline double tv_to_uniform(const std::vector<double>& heat, const std::vector<bool>& valid) {
  double total = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < heat.size(); ++i) {
    if (valid[i]) {
      total += heat[i];
      ++n;
    }
  }
  double s = 0.0;
  for (std::size_t i = 0; i < heat.size(); ++i) {
    if (valid[i]) s += std::fabs(heat[i] / total - 1.0 / n);
  }
  return s / 2.0;
}

inline double max_abs_diff(const bogrid::ScalarGrid& a, const bogrid::ScalarGrid& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a.values()[i] - b.values()[i]));
  return m;
}

inline bogrid::ScalarGrid random_grid(std::mt19937_64& gen, int w, int h, double lo = 0.0,
                                      double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  bogrid::ScalarGrid g(w, h);
  for (double& v : g.values()) v = dist(gen);
  return g;
}

}  // namespace oracle
