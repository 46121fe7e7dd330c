#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bogrid/error.hpp"
#include "bogrid/grid.hpp"

namespace bogrid {

enum class Action : std::uint8_t { North, East, South, West };

// Fixed neighbor order used wherever deterministic iteration matters.
inline constexpr std::array<Action, 4> kActions{Action::North, Action::East, Action::South,
                                                Action::West};

inline Cell neighbor(Cell c, Action a) noexcept {
  switch (a) {
    case Action::North: return {c.x, c.y - 1};
    case Action::East: return {c.x + 1, c.y};
    case Action::South: return {c.x, c.y + 1};
    case Action::West: return {c.x - 1, c.y};
  }
  return c;
}

inline const char* to_string(Action a) {
  switch (a) {
    case Action::North: return "north";
    case Action::East: return "east";
    case Action::South: return "south";
    case Action::West: return "west";
  }
  return "?";
}

// Level geometry. Legend: '#' collider, 'G' ghost wall (rendered and cut out of the
// NavMesh, but without a collider), '.' free, 'S' spawn.
class LevelSpec {
 public:
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  Cell spawn() const noexcept { return spawn_; }
  const NavMask& navmask() const noexcept { return navmask_; }

  bool contains(Cell c) const noexcept { return navmask_.contains(c); }
  bool blocked(Cell c) const noexcept { return blocked_[navmask_.index(c)] != 0; }
  bool ghost(Cell c) const noexcept { return ghost_[navmask_.index(c)] != 0; }
  bool passable(Cell c) const noexcept { return contains(c) && !blocked(c); }

  friend LevelSpec load_level(std::string_view text);

 private:
  LevelSpec(int w, int h) : width_(w), height_(h), navmask_(w, h, false) {}

  int width_;
  int height_;
  std::vector<std::uint8_t> blocked_;
  std::vector<std::uint8_t> ghost_;
  Cell spawn_;
  NavMask navmask_;
};

inline LevelSpec load_level(std::string_view text) {
  std::vector<std::string_view> rows;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    rows.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();

  auto fail = [](std::size_t row, std::size_t col, const std::string& msg) -> Error {
    return Error(ErrorCode::Parse,
                 "row " + std::to_string(row) + ", column " + std::to_string(col) + ": " + msg);
  };
  if (rows.empty()) throw fail(0, 0, "empty level");
  const std::size_t w = rows.front().size();
  const std::size_t h = rows.size();
  if (w < 4 || h < 4) {
    throw fail(0, 0, "level must be at least 4x4, got " + std::to_string(w) + "x" +
                         std::to_string(h));
  }

  LevelSpec level(static_cast<int>(w), static_cast<int>(h));
  level.blocked_.assign(w * h, 0);
  level.ghost_.assign(w * h, 0);
  std::optional<Cell> spawn;
  for (std::size_t y = 0; y < h; ++y) {
    if (rows[y].size() != w) {
      throw fail(y, std::min(rows[y].size(), w),
                 "ragged row of length " + std::to_string(rows[y].size()) + ", expected " +
                     std::to_string(w));
    }
    for (std::size_t x = 0; x < w; ++x) {
      const Cell c{static_cast<int>(x), static_cast<int>(y)};
      const std::size_t i = y * w + x;
      switch (rows[y][x]) {
        case '#': level.blocked_[i] = 1; break;
        case 'G': level.ghost_[i] = 1; break;
        case '.': break;
        case 'S':
          if (spawn) throw fail(y, x, "second spawn 'S' (first at " + to_string(*spawn) + ")");
          spawn = c;
          break;
        default: throw fail(y, x, std::string("unknown glyph '") + rows[y][x] + "'");
      }
      level.navmask_.set(c, !level.blocked_[i] && !level.ghost_[i]);
    }
  }
  if (!spawn) throw fail(0, 0, "no spawn 'S'");
  level.spawn_ = *spawn;
  return level;
}

inline LevelSpec load_level_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open level file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return load_level(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

struct AgentState {
  Cell position;
  std::optional<Cell> target;
  int steps_on_target = 0;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct StepOutcome {
  Cell new_position;
  bool moved = false;
  bool ghost_wall_entered = false;
  bool target_reached = false;

  friend bool operator==(const StepOutcome&, const StepOutcome&) = default;
};

// 4-connected move; colliders and the level edge stop the agent, ghost walls do not.
inline std::pair<AgentState, StepOutcome> step(const LevelSpec& level, AgentState agent,
                                               Action action) {
  StepOutcome out;
  const Cell dest = neighbor(agent.position, action);
  if (level.passable(dest)) {
    agent.position = dest;
    out.moved = true;
    out.ghost_wall_entered = level.ghost(dest);
  }
  ++agent.steps_on_target;
  out.new_position = agent.position;
  out.target_reached = agent.target && *agent.target == agent.position;
  return {agent, out};
}

inline int default_step_budget(const LevelSpec& level) {
  return 4 * (level.width() + level.height());
}

// Sends the agent back to spawn when it failed to reach its target within budget steps.
inline AgentState maybe_reset(const LevelSpec& level, AgentState agent, int budget) {
  if (budget < 1) throw Error(ErrorCode::InvalidParameter, "step budget must be >= 1");
  const bool reached = agent.target && *agent.target == agent.position;
  if (agent.target && !reached && agent.steps_on_target >= budget) {
    agent.position = level.spawn();
    agent.steps_on_target = 0;
    agent.target.reset();
  }
  return agent;
}

}  // namespace bogrid
