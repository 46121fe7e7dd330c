#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bogrid/error.hpp"
#include "bogrid/grid.hpp"
#include "bogrid/kernel.hpp"
#include "bogrid/metrics.hpp"
#include "bogrid/surrogate.hpp"

namespace bogrid {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Row-major CSV, one line per grid row, shortest round-trip formatting.
inline std::string to_csv(const ScalarGrid& g) {
  std::string out;
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      if (x) out += ',';
      out += format_double(g(x, y));
    }
    out += '\n';
  }
  return out;
}

inline ScalarGrid from_csv(const std::string& text) {
  std::vector<double> values;
  int width = -1, height = 0;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    int cols = 0;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t end = std::min(line.find(',', pos), line.size());
      double v = 0.0;
      const auto res = std::from_chars(line.data() + pos, line.data() + end, v);
      if (res.ec != std::errc{} || res.ptr != line.data() + end) {
        throw Error(ErrorCode::Parse, "csv row " + std::to_string(height) + ", column " +
                                          std::to_string(cols) + ": not a number");
      }
      values.push_back(v);
      ++cols;
      pos = end + 1;
    }
    if (width >= 0 && cols != width) {
      throw Error(ErrorCode::Parse, "csv row " + std::to_string(height) + " has " +
                                        std::to_string(cols) + " columns, expected " +
                                        std::to_string(width));
    }
    width = cols;
    ++height;
  }
  if (height == 0) throw Error(ErrorCode::Parse, "empty csv");
  return ScalarGrid(width, height, std::move(values));
}

// 8-bit ASCII PGM (P2). Finite values are min-max scaled to [0,255]; non-finite
// values (masked sentinels) map to 0. A constant field is white if positive, else black.
inline std::string to_pgm(const ScalarGrid& g) {
  double lo = INFINITY, hi = -INFINITY;
  for (double v : g.values()) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  std::string out = "P2\n" + std::to_string(g.width()) + " " + std::to_string(g.height()) + "\n255\n";
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      const double v = g(x, y);
      int level = 0;
      if (std::isfinite(v)) {
        if (hi > lo) {
          level = static_cast<int>(std::lround((v - lo) / (hi - lo) * 255.0));
        } else {
          level = v > 0.0 ? 255 : 0;
        }
      }
      if (x) out += ' ';
      out += std::to_string(level);
    }
    out += '\n';
  }
  return out;
}

// Pixel values of a P2 image, row-major.
inline std::vector<int> read_pgm_pixels(const std::string& text, int* width = nullptr,
                                        int* height = nullptr) {
  std::istringstream in(text);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  if (magic != "P2" || !in || w < 1 || h < 1) throw Error(ErrorCode::Parse, "not a P2 image");
  std::vector<int> px(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (int& p : px) {
    if (!(in >> p)) throw Error(ErrorCode::Parse, "truncated P2 image");
  }
  if (width) *width = w;
  if (height) *height = h;
  return px;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out.flush()) throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void to_json(nlohmann::json& j, const RunMetrics& m) {
  j = nlohmann::json{{"coverage", m.coverage},
                     {"dist_uniform", m.dist_uniform},
                     {"ghost_passes", m.ghost_passes},
                     {"steps", m.steps},
                     {"seed", m.seed}};
}

inline void from_json(const nlohmann::json& j, RunMetrics& m) {
  j.at("coverage").get_to(m.coverage);
  j.at("dist_uniform").get_to(m.dist_uniform);
  j.at("ghost_passes").get_to(m.ghost_passes);
  j.at("steps").get_to(m.steps);
  j.at("seed").get_to(m.seed);
}

namespace detail {

inline nlohmann::json grid_json(const ScalarGrid& g) {
  return {{"width", g.width()}, {"height", g.height()},
          {"values", std::vector<double>(g.values().begin(), g.values().end())}};
}

inline ScalarGrid grid_from_json(const nlohmann::json& j) {
  return ScalarGrid(j.at("width").get<int>(), j.at("height").get<int>(),
                    j.at("values").get<std::vector<double>>());
}

}  // namespace detail

// Full model snapshot; kernel is rebuilt from sigma and radius on load.
inline nlohmann::json state_to_json(const SurrogateState& s) {
  std::vector<int> mask(s.navmask().size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = s.navmask().valid_at(i) ? 1 : 0;
  return {{"mode", to_string(s.mode())},
          {"sigma", s.kernel().sigma()},
          {"radius", s.kernel().radius()},
          {"sigma_f", s.sigma_f()},
          {"sample_count", s.sample_count()},
          {"navmask", mask},
          {"occupancy", detail::grid_json(s.occupancy())},
          {"heat", detail::grid_json(s.heat())},
          {"metric_count", detail::grid_json(s.metric_count())}};
}

inline SurrogateState state_from_json(const nlohmann::json& j) {
  try {
    ScalarGrid occupancy = detail::grid_from_json(j.at("occupancy"));
    const auto bits = j.at("navmask").get<std::vector<int>>();
    NavMask mask(occupancy.width(), occupancy.height(), false);
    if (bits.size() != mask.size()) throw Error(ErrorCode::ShapeMismatch, "navmask size");
    for (std::size_t i = 0; i < bits.size(); ++i) mask.set(mask.cell(i), bits[i] != 0);
    const std::string mode = j.at("mode").get<std::string>();
    if (mode != "additive" && mode != "averaged") {
      throw Error(ErrorCode::Parse, "unknown surrogate mode '" + mode + "'");
    }
    return SurrogateState::restore(
        std::move(mask), build_kernel(j.at("sigma").get<double>(), j.at("radius").get<int>()),
        j.at("sigma_f").get<double>(),
        mode == "additive" ? SurrogateMode::Additive : SurrogateMode::Averaged,
        std::move(occupancy), detail::grid_from_json(j.at("heat")),
        detail::grid_from_json(j.at("metric_count")), j.at("sample_count").get<std::uint64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("state file: ") + e.what());
  }
}

}  // namespace bogrid
