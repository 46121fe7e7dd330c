#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "bogrid/error.hpp"
#include "bogrid/grid.hpp"
#include "bogrid/kernel.hpp"

namespace bogrid {

// additive: heat counts visits. averaged: heat sums a per-sample metric and the
// prediction is the kernel-weighted mean of the observed values.
enum class SurrogateMode { Additive, Averaged };

inline const char* to_string(SurrogateMode m) {
  return m == SurrogateMode::Additive ? "additive" : "averaged";
}

// Grid-map surrogate model. Every sample is folded into fixed-size grids, so the
// model's size and per-sample update cost do not depend on how much data was seen.
class SurrogateState {
 public:
  SurrogateState(NavMask mask, Kernel kernel, double sigma_f,
                 SurrogateMode mode = SurrogateMode::Additive)
      : mask_(std::move(mask)),
        kernel_(std::move(kernel)),
        sigma_f_(sigma_f),
        mode_(mode),
        occupancy_(mask_.width(), mask_.height()),
        heat_(mask_.width(), mask_.height()),
        metric_count_(mask_.width(), mask_.height()) {
    if (!(sigma_f > 0.0) || !std::isfinite(sigma_f)) {
      throw Error(ErrorCode::InvalidParameter, "sigma_f must be positive and finite");
    }
  }

  // O(1): touches exactly one cell of each grid.
  void record_sample(Cell cell, std::optional<double> metric_value = std::nullopt) {
    if (!occupancy_.contains(cell)) {
      throw Error(ErrorCode::InvalidCell, "sample cell " + to_string(cell) + " is outside the " +
                                              std::to_string(width()) + "x" +
                                              std::to_string(height()) + " grid");
    }
    if (mode_ == SurrogateMode::Additive) {
      if (metric_value) {
        throw Error(ErrorCode::ModeMismatch, "additive model takes no metric value");
      }
      heat_[cell] += 1.0;
    } else {
      if (!metric_value) {
        throw Error(ErrorCode::ModeMismatch, "averaged model requires a metric value");
      }
      if (!(*metric_value >= 0.0) || !std::isfinite(*metric_value)) {
        throw Error(ErrorCode::InvalidParameter, "metric values must be finite and non-negative");
      }
      heat_[cell] += *metric_value;
      metric_count_[cell] += 1.0;
    }
    occupancy_[cell] = 1.0;
    ++sample_count_;
  }

  int width() const noexcept { return mask_.width(); }
  int height() const noexcept { return mask_.height(); }
  const NavMask& navmask() const noexcept { return mask_; }
  const Kernel& kernel() const noexcept { return kernel_; }
  double sigma_f() const noexcept { return sigma_f_; }
  SurrogateMode mode() const noexcept { return mode_; }
  const ScalarGrid& occupancy() const noexcept { return occupancy_; }
  const ScalarGrid& heat() const noexcept { return heat_; }
  const ScalarGrid& metric_count() const noexcept { return metric_count_; }
  std::uint64_t sample_count() const noexcept { return sample_count_; }

  // Bytes held by the model, including heap storage.
  std::size_t footprint_bytes() const noexcept {
    return sizeof(*this) + occupancy_.capacity_bytes() + heat_.capacity_bytes() +
           metric_count_.capacity_bytes() + kernel_.weights().capacity() * sizeof(double) +
           mask_.size();
  }

  // Rebuilds a model from previously saved grids (see io.hpp).
  static SurrogateState restore(NavMask mask, Kernel kernel, double sigma_f, SurrogateMode mode,
                                ScalarGrid occupancy, ScalarGrid heat, ScalarGrid metric_count,
                                std::uint64_t sample_count) {
    SurrogateState s(std::move(mask), std::move(kernel), sigma_f, mode);
    require_same_shape(s.occupancy_, occupancy, "restored occupancy");
    require_same_shape(s.heat_, heat, "restored heat");
    require_same_shape(s.metric_count_, metric_count, "restored metric_count");
    s.occupancy_ = std::move(occupancy);
    s.heat_ = std::move(heat);
    s.metric_count_ = std::move(metric_count);
    s.sample_count_ = sample_count;
    return s;
  }

 private:
  NavMask mask_;
  Kernel kernel_;
  double sigma_f_;
  SurrogateMode mode_;
  ScalarGrid occupancy_;
  ScalarGrid heat_;
  ScalarGrid metric_count_;
  std::uint64_t sample_count_ = 0;
};

// Smoothed prediction f, rescaled so its maximum is 1 (all zeros without data).
inline ScalarGrid predict_field(const SurrogateState& s) {
  ScalarGrid raw = convolve(s.heat(), s.kernel());
  if (s.mode() == SurrogateMode::Averaged) {
    const ScalarGrid weight = convolve(s.metric_count(), s.kernel());
    auto r = raw.values();
    auto w = weight.values();
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = w[i] > 1e-12 ? r[i] / w[i] : 0.0;
  }
  auto r = raw.values();
  const double peak = *std::max_element(r.begin(), r.end());
  if (peak > 0.0) {
    for (double& v : r) v /= peak;
  } else {
    std::fill(r.begin(), r.end(), 0.0);
  }
  return raw;
}

// Confidence c = clamp(K * occupancy, 0, 1).
inline ScalarGrid confidence_field(const SurrogateState& s) {
  ScalarGrid c = convolve(s.occupancy(), s.kernel());
  for (double& v : c.values()) v = std::clamp(v, 0.0, 1.0);
  return c;
}

// u = (1 - c) sigma_f
inline ScalarGrid uncertainty_from_confidence(const ScalarGrid& confidence, double sigma_f) {
  ScalarGrid u(confidence.width(), confidence.height());
  auto c = confidence.values();
  auto out = u.values();
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = (1.0 - c[i]) * sigma_f;
  return u;
}

inline ScalarGrid uncertainty_field(const SurrogateState& s) {
  return uncertainty_from_confidence(confidence_field(s), s.sigma_f());
}

inline ScalarGrid apply_mask(const ScalarGrid& field, const NavMask& mask, double fill) {
  require_same_shape(field, mask, "apply_mask");
  ScalarGrid out = field;
  auto v = out.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!mask.valid_at(i)) v[i] = fill;
  }
  return out;
}

}  // namespace bogrid
