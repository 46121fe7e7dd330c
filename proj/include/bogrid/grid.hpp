#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bogrid/error.hpp"

namespace bogrid {

// Cell coordinates on the ground plane: x is the column, y is the row.
struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

inline std::string to_string(Cell c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

// Dense row-major 2D array of reals. Dimensions are fixed at construction.
class ScalarGrid {
 public:
  ScalarGrid(int width, int height, double fill = 0.0) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
      throw Error(ErrorCode::InvalidParameter, "grid dimensions must be at least 1x1");
    }
    values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  ScalarGrid(int width, int height, std::vector<double> values) : ScalarGrid(width, height) {
    if (values.size() != values_.size()) {
      throw Error(ErrorCode::ShapeMismatch, "value count " + std::to_string(values.size()) +
                                                " does not match " + std::to_string(width) + "x" +
                                                std::to_string(height));
    }
    values_ = std::move(values);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }

  bool contains(Cell c) const noexcept {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  std::size_t index(Cell c) const noexcept {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.x);
  }
  Cell cell(std::size_t i) const noexcept {
    return {static_cast<int>(i % static_cast<std::size_t>(width_)),
            static_cast<int>(i / static_cast<std::size_t>(width_))};
  }

  double& operator()(int x, int y) noexcept { return values_[index({x, y})]; }
  double operator()(int x, int y) const noexcept { return values_[index({x, y})]; }
  double& operator[](Cell c) noexcept { return values_[index(c)]; }
  double operator[](Cell c) const noexcept { return values_[index(c)]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  std::size_t capacity_bytes() const noexcept { return values_.capacity() * sizeof(double); }

  bool same_shape(const ScalarGrid& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const ScalarGrid&, const ScalarGrid&) = default;

 private:
  int width_;
  int height_;
  std::vector<double> values_;
};

// Walkable-region annotation: valid cells are the physically meaningful part of the level.
class NavMask {
 public:
  NavMask(int width, int height, bool fill = true) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
      throw Error(ErrorCode::InvalidParameter, "mask dimensions must be at least 1x1");
    }
    valid_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                  fill ? 1 : 0);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return valid_.size(); }

  bool contains(Cell c) const noexcept {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  std::size_t index(Cell c) const noexcept {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.x);
  }
  Cell cell(std::size_t i) const noexcept {
    return {static_cast<int>(i % static_cast<std::size_t>(width_)),
            static_cast<int>(i / static_cast<std::size_t>(width_))};
  }

  bool valid(Cell c) const noexcept { return contains(c) && valid_[index(c)] != 0; }
  bool valid_at(std::size_t i) const noexcept { return valid_[i] != 0; }
  void set(Cell c, bool v) noexcept { valid_[index(c)] = v ? 1 : 0; }

  std::size_t valid_count() const noexcept {
    return static_cast<std::size_t>(std::count(valid_.begin(), valid_.end(), std::uint8_t{1}));
  }

  template <class Grid>
  bool matches(const Grid& g) const noexcept {
    return g.width() == width_ && g.height() == height_;
  }

  friend bool operator==(const NavMask&, const NavMask&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> valid_;
};

template <class A, class B>
void require_same_shape(const A& a, const B& b, const char* what) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(what) + ": " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

}  // namespace bogrid
