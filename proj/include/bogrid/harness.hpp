#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "bogrid/acquisition.hpp"
#include "bogrid/error.hpp"
#include "bogrid/io.hpp"
#include "bogrid/kernel.hpp"
#include "bogrid/level.hpp"
#include "bogrid/metrics.hpp"
#include "bogrid/navigation.hpp"
#include "bogrid/rng.hpp"
#include "bogrid/surrogate.hpp"

namespace bogrid {

enum class TargetMode { Bo, Random };

inline const char* to_string(TargetMode m) { return m == TargetMode::Bo ? "bo" : "random"; }

struct RunConfig {
  std::string level_path;
  double sigma = 0.5;
  double sigma_f = 1.0;
  TargetMode target_mode = TargetMode::Bo;
  ExplorationMode exploration = ExplorationMode::adaptive();
  double constant_rate = 0.2;  // used by the constant rows of an ablation
  std::optional<int> step_budget;  // defaults to 4 * (width + height)
  std::int64_t total_steps = 50'000;
  int trials = 20;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  unsigned jobs = 0;  // worker threads for trials; 0 = hardware concurrency

  void validate() const {
    auto bad = [](const std::string& m) { return Error(ErrorCode::InvalidParameter, m); };
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw bad("sigma must be > 0");
    if (!(sigma_f > 0.0) || !std::isfinite(sigma_f)) throw bad("sigma_f must be > 0");
    if (!(constant_rate >= 0.0 && constant_rate <= 1.0)) throw bad("constant_rate must be in [0,1]");
    if (step_budget && *step_budget < 1) throw bad("step_budget must be >= 1");
    if (total_steps < 1) throw bad("total_steps must be >= 1");
    if (trials < 1) throw bad("trials must be >= 1");
  }
};

// Trial seeds depend on the trial index only, so every ablation row sees the same
// random streams (common random numbers).
inline std::uint64_t trial_seed(std::uint64_t base_seed, int trial) {
  return base_seed + static_cast<std::uint64_t>(trial);
}

struct TrialResult {
  RunMetrics metrics;
  SurrogateState state;
};

// Called with (steps done, model) every `every` steps; `every` <= 0 disables it.
struct TrialObserver {
  std::int64_t every = 0;
  std::function<void(std::int64_t, const SurrogateState&)> callback;
};

inline RunMetrics summarize(const SurrogateState& s, std::int64_t ghost_passes, std::int64_t steps,
                            std::uint64_t seed) {
  RunMetrics m;
  m.coverage = coverage(s.occupancy(), s.navmask());
  m.dist_uniform = distance_to_uniform(s.heat(), s.navmask());
  m.ghost_passes = ghost_passes;
  m.steps = steps;
  m.seed = seed;
  return m;
}

// One explore-test session: pick a target, walk toward it one frame at a time with
// plan/explore mixing, record every frame, reset on budget overrun. Model fields are
// recomputed at target selection only, so per-frame cost stays O(1).
inline TrialResult run_trial(const LevelSpec& level, const RunConfig& cfg, std::uint64_t seed,
                             const TrialObserver& observer = {}) {
  cfg.validate();
  const NavMask& mask = level.navmask();
  std::vector<Cell> valid_cells;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask.valid_at(i)) valid_cells.push_back(mask.cell(i));
  }
  if (valid_cells.empty()) throw Error(ErrorCode::EmptyMask, "level has no NavMesh-valid cell");

  SurrogateState state(mask, build_kernel(cfg.sigma), cfg.sigma_f);
  Rng rng(seed);
  const int budget = cfg.step_budget.value_or(default_step_budget(level));
  const bool adaptive = cfg.exploration.kind() == ExplorationMode::Kind::Adaptive;

  AgentState agent{level.spawn(), std::nullopt, 0};
  std::optional<DistanceField> route;
  // Confidence map as of the latest target selection. The agent explores where the
  // model was uncertain when the target was chosen and walks straight through the
  // rest.
  ScalarGrid confidence(mask.width(), mask.height());
  std::int64_t ghost_passes = 0;

  for (std::int64_t t = 0; t < cfg.total_steps; ++t) {
    if (!agent.target) {
      Cell target;
      if (cfg.target_mode == TargetMode::Bo) {
        confidence = confidence_field(state);
        const ScalarGrid u = uncertainty_from_confidence(confidence, cfg.sigma_f);
        target = select_target(acquisition_field(predict_field(state), u, mask), mask, rng).target;
      } else {
        if (adaptive) confidence = confidence_field(state);
        target = valid_cells[rng.uniform_index(valid_cells.size())];
      }
      agent.target = target;
      agent.steps_on_target = 0;
      route.emplace(mask, target);
    }
    const double c = adaptive ? confidence[agent.position] : 1.0;
    const ActionChoice choice =
        choose_action(route->next_move(agent.position), c, cfg.exploration, rng);
    // Each frame's sample is taken at the cell the action is issued from.
    state.record_sample(agent.position);
    const bool was_ghost = level.ghost(agent.position);
    const auto [next, outcome] = step(level, agent, choice.action);
    agent = next;
    if (outcome.ghost_wall_entered && !was_ghost) ++ghost_passes;
    if (outcome.target_reached) {
      agent.target.reset();
    } else {
      agent = maybe_reset(level, agent, budget);
    }
    if (observer.every > 0 && observer.callback && (t + 1) % observer.every == 0) {
      observer.callback(t + 1, state);
    }
  }
  return {summarize(state, ghost_passes, cfg.total_steps, seed), std::move(state)};
}

inline TrialResult run_trial(const RunConfig& cfg, std::uint64_t seed) {
  return run_trial(load_level_file(cfg.level_path), cfg, seed);
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads; the first exception is rethrown.
inline void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline nlohmann::json config_json(const RunConfig& cfg, const LevelSpec& level) {
  return {{"level_path", cfg.level_path},
          {"sigma", cfg.sigma},
          {"sigma_f", cfg.sigma_f},
          {"target_mode", to_string(cfg.target_mode)},
          {"exploration", cfg.exploration.name()},
          {"constant_rate", cfg.constant_rate},
          {"step_budget", cfg.step_budget.value_or(default_step_budget(level))},
          {"total_steps", cfg.total_steps},
          {"trials", cfg.trials},
          {"seed", cfg.seed}};
}

inline nlohmann::json metric_definitions() {
  return {{"coverage", "fraction of NavMesh-valid cells visited at least once (cell count, not area)"},
          {"dist_uniform",
           "total-variation distance between visit counts normalized over NavMesh-valid cells and "
           "the uniform distribution over the same cells"},
          {"ghost_passes", "number of moves entering a ghost-wall cell from a non-ghost cell"},
          {"steps", "simulation steps; one step is one time frame and stands in for test time"},
          {"step_budget", "steps allowed per target before the agent is reset to spawn"},
          {"normalization", "ratio of config mean to the (random targets, no exploration) mean"}};
}

// Writes occupancy/heat/confidence/acquisition maps, heat.csv and metrics.json.
inline void render_outputs(const SurrogateState& s, const RunMetrics& m, const nlohmann::json& config,
                           const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + out_dir.string() + "': " + ec.message());
  const ScalarGrid f = predict_field(s);
  const ScalarGrid c = confidence_field(s);
  const ScalarGrid a =
      acquisition_field(f, uncertainty_from_confidence(c, s.sigma_f()), s.navmask());
  write_file(out_dir / "occupancy.pgm", to_pgm(s.occupancy()));
  write_file(out_dir / "heat.pgm", to_pgm(s.heat()));
  write_file(out_dir / "confidence.pgm", to_pgm(c));
  write_file(out_dir / "acquisition.pgm", to_pgm(a));
  write_file(out_dir / "heat.csv", to_csv(s.heat()));
  nlohmann::json j = m;
  j["config"] = config;
  j["definitions"] = metric_definitions();
  write_file(out_dir / "metrics.json", j.dump(2) + "\n");
}

struct Stat {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single trial
};

inline Stat stat_of(const std::vector<double>& xs) {
  Stat s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

struct AblationRow {
  std::string name;
  TargetMode target_mode = TargetMode::Bo;
  ExplorationMode exploration = ExplorationMode::none();
  std::vector<RunMetrics> trials;
  Stat coverage, dist_uniform, ghost_passes;
  double norm_coverage = 1.0;
  double norm_dist_uniform = 1.0;
  bool baseline = false;
};

struct AblationReport {
  std::vector<AblationRow> rows;  // five ablation configs, then the baseline
  nlohmann::json config;

  const AblationRow& row(const std::string& name) const {
    for (const auto& r : rows) {
      if (r.name == name) return r;
    }
    throw Error(ErrorCode::InvalidParameter, "no ablation row '" + name + "'");
  }
};

inline std::vector<std::pair<TargetMode, ExplorationMode>> ablation_configs(double constant_rate) {
  const auto c = ExplorationMode::constant(constant_rate);
  return {{TargetMode::Bo, ExplorationMode::adaptive()},     {TargetMode::Bo, c},
          {TargetMode::Bo, ExplorationMode::none()},         {TargetMode::Random, ExplorationMode::adaptive()},
          {TargetMode::Random, c},                           {TargetMode::Random, ExplorationMode::none()}};
}

inline std::string row_name(TargetMode t, const ExplorationMode& e) {
  return std::string(to_string(t)) + "-" + e.name();
}

struct AblationOptions {
  // Writes ablation.json, ablation.csv and one map directory (trial 0) per config.
  bool write_files = true;
};

inline AblationReport run_ablation(const RunConfig& base, const AblationOptions& opts = {}) {
  base.validate();
  const LevelSpec level = load_level_file(base.level_path);
  const auto configs = ablation_configs(base.constant_rate);
  const std::size_t n_trials = static_cast<std::size_t>(base.trials);

  // Results land in fixed (config, trial) slots, so thread scheduling cannot change the report.
  std::vector<RunMetrics> metrics(configs.size() * n_trials);
  std::vector<std::optional<SurrogateState>> first_states(configs.size());
  parallel_for(metrics.size(), base.jobs, [&](std::size_t job) {
    RunConfig cfg = base;
    cfg.target_mode = configs[job / n_trials].first;
    cfg.exploration = configs[job / n_trials].second;
    const int trial = static_cast<int>(job % n_trials);
    TrialResult r = run_trial(level, cfg, trial_seed(base.seed, trial));
    metrics[job] = r.metrics;
    if (trial == 0 && opts.write_files) first_states[job / n_trials] = std::move(r.state);
  });

  AblationReport report;
  report.config = config_json(base, level);
  report.config.erase("target_mode");
  report.config.erase("exploration");
  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    AblationRow row;
    row.name = row_name(configs[ci].first, configs[ci].second);
    row.target_mode = configs[ci].first;
    row.exploration = configs[ci].second;
    row.baseline = ci + 1 == configs.size();
    std::vector<double> cov, dist, ghost;
    for (std::size_t t = 0; t < n_trials; ++t) {
      const RunMetrics& m = metrics[ci * n_trials + t];
      row.trials.push_back(m);
      cov.push_back(m.coverage);
      dist.push_back(m.dist_uniform);
      ghost.push_back(static_cast<double>(m.ghost_passes));
    }
    row.coverage = stat_of(cov);
    row.dist_uniform = stat_of(dist);
    row.ghost_passes = stat_of(ghost);
    report.rows.push_back(std::move(row));
  }
  const AblationRow& base_row = report.rows.back();
  for (auto& row : report.rows) {
    row.norm_coverage = normalize_vs_baseline(row.coverage.mean, base_row.coverage.mean);
    row.norm_dist_uniform = normalize_vs_baseline(row.dist_uniform.mean, base_row.dist_uniform.mean);
  }

  if (opts.write_files) {
    const std::filesystem::path out(base.out_dir);
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
      RunConfig cfg = base;
      cfg.target_mode = configs[ci].first;
      cfg.exploration = configs[ci].second;
      render_outputs(*first_states[ci], metrics[ci * n_trials], config_json(cfg, level),
                     out / report.rows[ci].name);
    }
    nlohmann::json rows = nlohmann::json::array();
    std::string csv =
        "config,target_mode,exploration,trials,coverage_mean,coverage_std,dist_uniform_mean,"
        "dist_uniform_std,ghost_passes_mean,ghost_passes_std,norm_coverage,norm_dist_uniform\n";
    for (const auto& row : report.rows) {
      rows.push_back({{"config", row.name},
                      {"target_mode", to_string(row.target_mode)},
                      {"exploration", row.exploration.name()},
                      {"baseline", row.baseline},
                      {"coverage", {{"mean", row.coverage.mean}, {"std", row.coverage.std}}},
                      {"dist_uniform", {{"mean", row.dist_uniform.mean}, {"std", row.dist_uniform.std}}},
                      {"ghost_passes", {{"mean", row.ghost_passes.mean}, {"std", row.ghost_passes.std}}},
                      {"norm_coverage", row.norm_coverage},
                      {"norm_dist_uniform", row.norm_dist_uniform},
                      {"trials", row.trials}});
      csv += row.name + "," + to_string(row.target_mode) + "," + row.exploration.name() + "," +
             std::to_string(row.trials.size()) + "," + format_double(row.coverage.mean) + "," +
             format_double(row.coverage.std) + "," + format_double(row.dist_uniform.mean) + "," +
             format_double(row.dist_uniform.std) + "," + format_double(row.ghost_passes.mean) + "," +
             format_double(row.ghost_passes.std) + "," + format_double(row.norm_coverage) + "," +
             format_double(row.norm_dist_uniform) + "\n";
    }
    nlohmann::json j{{"config", report.config}, {"definitions", metric_definitions()}, {"rows", rows}};
    write_file(out / "ablation.json", j.dump(2) + "\n");
    write_file(out / "ablation.csv", csv);
  }
  return report;
}

}  // namespace bogrid
