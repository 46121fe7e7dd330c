// Command-line entry point: single-config runs, the ablation matrix, and map re-rendering.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bogrid/bogrid.hpp"

namespace fs = std::filesystem;
using namespace bogrid;

namespace {

int do_run(const RunConfig& cfg) {
  const LevelSpec level = load_level_file(cfg.level_path);
  const nlohmann::json config = config_json(cfg, level);
  std::vector<RunMetrics> all;
  std::vector<double> cov, dist, ghost;
  for (int t = 0; t < cfg.trials; ++t) {
    TrialResult r = run_trial(level, cfg, trial_seed(cfg.seed, t));
    if (t == 0) {
      render_outputs(r.state, r.metrics, config, cfg.out_dir);
      nlohmann::json snapshot{{"state", state_to_json(r.state)}, {"metrics", r.metrics}, {"config", config}};
      write_file(fs::path(cfg.out_dir) / "state.json", snapshot.dump() + "\n");
    }
    std::printf("trial %d seed %llu: coverage %.4f dist_uniform %.4f ghost_passes %lld\n", t,
                static_cast<unsigned long long>(r.metrics.seed), r.metrics.coverage,
                r.metrics.dist_uniform, static_cast<long long>(r.metrics.ghost_passes));
    cov.push_back(r.metrics.coverage);
    dist.push_back(r.metrics.dist_uniform);
    ghost.push_back(static_cast<double>(r.metrics.ghost_passes));
    all.push_back(r.metrics);
  }
  const Stat c = stat_of(cov), d = stat_of(dist), g = stat_of(ghost);
  nlohmann::json summary{{"config", config},
                         {"definitions", metric_definitions()},
                         {"coverage", {{"mean", c.mean}, {"std", c.std}}},
                         {"dist_uniform", {{"mean", d.mean}, {"std", d.std}}},
                         {"ghost_passes", {{"mean", g.mean}, {"std", g.std}}},
                         {"trials", all}};
  write_file(fs::path(cfg.out_dir) / "summary.json", summary.dump(2) + "\n");
  std::printf("mean coverage %.4f (std %.4f)  mean dist_uniform %.4f (std %.4f)  mean ghost_passes %.2f\n",
              c.mean, c.std, d.mean, d.std, g.mean);
  return 0;
}

int do_ablate(const RunConfig& cfg) {
  const AblationReport report = run_ablation(cfg);
  std::printf("%-18s %10s %10s %10s %10s %8s\n", "config", "coverage", "dist", "norm_cov",
              "norm_dist", "ghost");
  for (const auto& row : report.rows) {
    std::printf("%-18s %10.4f %10.4f %10.3f %10.3f %8.2f%s\n", row.name.c_str(), row.coverage.mean,
                row.dist_uniform.mean, row.norm_coverage, row.norm_dist_uniform,
                row.ghost_passes.mean, row.baseline ? "  (baseline)" : "");
  }
  std::printf("report written to %s\n", (fs::path(cfg.out_dir) / "ablation.json").c_str());
  return 0;
}

int do_render(const std::string& state_path, const std::string& out_dir) {
  nlohmann::json snapshot;
  try {
    snapshot = nlohmann::json::parse(read_file(state_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, state_path + ": " + e.what());
  }
  if (!snapshot.contains("state") || !snapshot.contains("metrics")) {
    throw Error(ErrorCode::Parse, state_path + ": missing 'state' or 'metrics'");
  }
  const SurrogateState state = state_from_json(snapshot["state"]);
  const RunMetrics metrics = snapshot["metrics"].get<RunMetrics>();
  render_outputs(state, metrics, snapshot.value("config", nlohmann::json::object()), out_dir);
  std::printf("maps written to %s\n", out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-map Bayesian-optimization exploration for automated level testing"};
  app.set_config("--config", "", "key=value configuration file; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string targets = "bo";
  std::string exploration = "adaptive";
  int step_budget = 0;
  app.add_option("--level", cfg.level_path, "Level text file")->check(CLI::ExistingFile);
  app.add_option("--sigma", cfg.sigma, "Kernel bandwidth in cells")->capture_default_str();
  app.add_option("--sigma-f", cfg.sigma_f, "Uncertainty amplitude")->capture_default_str();
  app.add_option("--targets", targets, "Target selection")
      ->check(CLI::IsMember({"bo", "random"}))
      ->capture_default_str();
  app.add_option("--exploration", exploration, "Random-action mixing")
      ->check(CLI::IsMember({"adaptive", "constant", "none"}))
      ->capture_default_str();
  app.add_option("--rate", cfg.constant_rate, "Constant exploration rate")->capture_default_str();
  app.add_option("--step-budget", step_budget, "Steps per target before reset (0 = 4*(w+h))")
      ->capture_default_str();
  app.add_option("--steps", cfg.total_steps, "Simulation steps per trial")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Trials per configuration")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
  app.add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Worker threads (0 = all cores)")->capture_default_str();

  auto* run = app.add_subcommand("run", "Run trials of a single configuration");
  auto* ablate = app.add_subcommand("ablate", "Run the ablation matrix against the random baseline");
  auto* render = app.add_subcommand("render", "Re-emit maps from a saved state.json");
  std::string state_path;
  std::string render_out = "render";
  render->add_option("--state", state_path, "state.json written by `run`")->required();
  render->add_option("--to", render_out, "Directory for the re-rendered maps")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*render) return do_render(state_path, render_out);
    if (cfg.level_path.empty()) throw Error(ErrorCode::InvalidParameter, "--level is required");
    cfg.target_mode = targets == "bo" ? TargetMode::Bo : TargetMode::Random;
    cfg.exploration = exploration == "adaptive" ? ExplorationMode::adaptive()
                      : exploration == "none"   ? ExplorationMode::none()
                                                : ExplorationMode::constant(cfg.constant_rate);
    if (step_budget > 0) cfg.step_budget = step_budget;
    cfg.validate();
    if (*run) return do_run(cfg);
    if (*ablate) return do_ablate(cfg);
  } catch (const std::exception& e) {
    std::cerr << "bogrid: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
