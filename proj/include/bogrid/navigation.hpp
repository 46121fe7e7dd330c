#pragma once

#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "bogrid/error.hpp"
#include "bogrid/grid.hpp"
#include "bogrid/level.hpp"
#include "bogrid/rng.hpp"

namespace bogrid {

// How often the low-level controller abandons its plan for a random move.
class ExplorationMode {
 public:
  enum class Kind { Adaptive, Constant, None };

  static ExplorationMode adaptive() { return ExplorationMode(Kind::Adaptive, 0.0); }
  static ExplorationMode none() { return ExplorationMode(Kind::None, 0.0); }
  static ExplorationMode constant(double rate) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
      throw Error(ErrorCode::InvalidParameter, "constant exploration rate must be in [0,1]");
    }
    return ExplorationMode(Kind::Constant, rate);
  }

  Kind kind() const noexcept { return kind_; }
  double rate() const noexcept { return rate_; }

  // Probability of following the plan given the confidence at the agent's cell.
  double follow_probability(double confidence) const noexcept {
    switch (kind_) {
      case Kind::Adaptive: return confidence;
      case Kind::Constant: return 1.0 - rate_;
      case Kind::None: return 1.0;
    }
    return 1.0;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::Adaptive: return "adaptive";
      case Kind::Constant: return "constant";
      case Kind::None: return "none";
    }
    return "?";
  }

  friend bool operator==(const ExplorationMode&, const ExplorationMode&) = default;

 private:
  ExplorationMode(Kind k, double r) : kind_(k), rate_(r) {}
  Kind kind_;
  double rate_;
};

// Breadth-first distances to one target over NavMesh-valid cells. Following
// strictly decreasing distances from any reachable cell is a shortest path, so a
// single field serves every replan toward the same target.
class DistanceField {
 public:
  static constexpr int kUnreachable = std::numeric_limits<int>::max();

  DistanceField(const NavMask& mask, Cell target)
      : mask_(&mask), target_(target), dist_(mask.size(), kUnreachable) {
    if (!mask.valid(target)) {
      throw Error(ErrorCode::InvalidCell, "target " + to_string(target) + " is not on the NavMesh");
    }
    std::queue<Cell> frontier;
    dist_[mask.index(target)] = 0;
    frontier.push(target);
    while (!frontier.empty()) {
      const Cell c = frontier.front();
      frontier.pop();
      const int d = dist_[mask.index(c)] + 1;
      for (Action a : kActions) {
        const Cell n = neighbor(c, a);
        if (mask.valid(n) && dist_[mask.index(n)] == kUnreachable) {
          dist_[mask.index(n)] = d;
          frontier.push(n);
        }
      }
    }
  }

  Cell target() const noexcept { return target_; }

  int distance(Cell from) const noexcept {
    return mask_->valid(from) ? dist_[mask_->index(from)] : kUnreachable;
  }

  // First move of a shortest path, neighbors tried in N, E, S, W order. Empty at
  // the target, off the NavMesh, or when the target is unreachable.
  std::optional<Action> next_move(Cell from) const noexcept {
    const int d = distance(from);
    if (d == kUnreachable || d == 0) return std::nullopt;
    for (Action a : kActions) {
      if (distance(neighbor(from, a)) == d - 1) return a;
    }
    return std::nullopt;
  }

 private:
  const NavMask* mask_;
  Cell target_;
  std::vector<int> dist_;
};

struct PlanCache {
  Cell target;
  std::vector<Cell> path;  // path.front() is the source, path.back() the target

  std::optional<Action> next_move() const {
    if (path.size() < 2) return std::nullopt;
    for (Action a : kActions) {
      if (neighbor(path[0], a) == path[1]) return a;
    }
    return std::nullopt;
  }
};

// Shortest NavMesh path; nullopt when unreachable or when from is off the NavMesh.
inline std::optional<PlanCache> plan(const LevelSpec& level, Cell from, Cell target) {
  const DistanceField field(level.navmask(), target);
  if (field.distance(from) == DistanceField::kUnreachable) return std::nullopt;
  PlanCache p{target, {from}};
  Cell c = from;
  while (auto a = field.next_move(c)) {
    c = neighbor(c, *a);
    p.path.push_back(c);
  }
  return p;
}

struct ActionChoice {
  Action action;
  bool exploratory = false;  // true when drawn uniformly instead of taken from the plan
};

// Follows planned with probability mode.follow_probability(c); otherwise, or when
// there is no planned move, picks uniformly among the four directions.
inline ActionChoice choose_action(std::optional<Action> planned, double confidence,
                                  const ExplorationMode& mode, Rng& rng) {
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "confidence must be in [0,1]");
  }
  if (planned && rng.bernoulli(mode.follow_probability(confidence))) {
    return {*planned, false};
  }
  return {kActions[rng.uniform_index(kActions.size())], true};
}

inline ActionChoice choose_action(const std::optional<PlanCache>& p, double confidence,
                                  const ExplorationMode& mode, Rng& rng) {
  return choose_action(p ? p->next_move() : std::nullopt, confidence, mode, rng);
}

}  // namespace bogrid
