#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "bogrid/error.hpp"
#include "bogrid/grid.hpp"

namespace bogrid {

// Truncated Gaussian similarity K(d) = exp(-d^2 / (2 sigma^2)), peak 1 at d = 0.
// The 2D kernel is the outer product of weights() with itself.
class Kernel {
 public:
  double sigma() const noexcept { return sigma_; }
  int radius() const noexcept { return radius_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  // Weight at signed axis offset d; zero outside the truncation radius.
  double weight(int d) const noexcept {
    return (d < -radius_ || d > radius_) ? 0.0 : weights_[static_cast<std::size_t>(d + radius_)];
  }

  friend bool operator==(const Kernel&, const Kernel&) = default;

  friend Kernel build_kernel(double sigma, std::optional<int> radius);

 private:
  double sigma_ = 1.0;
  int radius_ = 1;
  std::vector<double> weights_;
};

inline int auto_radius(double sigma) { return static_cast<int>(std::ceil(3.0 * sigma)); }

// radius defaults to ceil(3 sigma).
inline Kernel build_kernel(double sigma, std::optional<int> radius = std::nullopt) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::InvalidParameter, "kernel sigma must be positive and finite");
  }
  const int r = radius.value_or(auto_radius(sigma));
  if (r < 1) {
    throw Error(ErrorCode::InvalidParameter, "kernel radius must be >= 1");
  }
  Kernel k;
  k.sigma_ = sigma;
  k.radius_ = r;
  k.weights_.resize(static_cast<std::size_t>(2 * r + 1));
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (int d = -r; d <= r; ++d) {
    k.weights_[static_cast<std::size_t>(d + r)] = std::exp(-static_cast<double>(d * d) * inv);
  }
  return k;
}

namespace detail {

// One zero-padded 1D pass along rows (horizontal) or columns (vertical).
inline void convolve_pass(const ScalarGrid& in, ScalarGrid& out, const Kernel& k, bool horizontal) {
  const int w = in.width();
  const int h = in.height();
  const int r = k.radius();
  const double* wt = k.weights().data() + r;
  const auto src = in.values();
  auto dst = out.values();
  if (horizontal) {
    for (int y = 0; y < h; ++y) {
      const double* row = src.data() + static_cast<std::size_t>(y) * w;
      double* orow = dst.data() + static_cast<std::size_t>(y) * w;
      for (int x = 0; x < w; ++x) {
        const int lo = std::max(-r, -x);
        const int hi = std::min(r, w - 1 - x);
        double acc = 0.0;
        for (int d = lo; d <= hi; ++d) acc += row[x + d] * wt[d];
        orow[x] = acc;
      }
    }
  } else {
    std::fill(dst.begin(), dst.end(), 0.0);
    for (int y = 0; y < h; ++y) {
      double* orow = dst.data() + static_cast<std::size_t>(y) * w;
      const int lo = std::max(-r, -y);
      const int hi = std::min(r, h - 1 - y);
      for (int d = lo; d <= hi; ++d) {
        const double* row = src.data() + static_cast<std::size_t>(y + d) * w;
        const double wd = wt[d];
        for (int x = 0; x < w; ++x) orow[x] += row[x] * wd;
      }
    }
  }
}

}  // namespace detail

// Zero-padded 2D convolution with the separable kernel; same dimensions as the input.
inline ScalarGrid convolve(const ScalarGrid& grid, const Kernel& kernel) {
  ScalarGrid tmp(grid.width(), grid.height());
  ScalarGrid out(grid.width(), grid.height());
  detail::convolve_pass(grid, tmp, kernel, true);
  detail::convolve_pass(tmp, out, kernel, false);
  return out;
}

}  // namespace bogrid
