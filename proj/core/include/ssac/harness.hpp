#pragma once

#include <string>
#include <vector>

#include "ssac/config.hpp"
#include "ssac/had.hpp"
#include "ssac/scene.hpp"

namespace ssac {

enum class ExperimentKind {
  kBeampattern,
  kRmseVsPower,
  kConvergence,
  kRateVsPower,
  kRateVsRfChains,
  kRateVsCrlbThreshold,
  kEstimateDemo,
};

ExperimentKind experiment_kind_from(const std::string& name);
std::string to_string(ExperimentKind kind);

std::string to_string(Architecture arch);
Architecture architecture_from(const std::string& name);

/// One experiment: a scene, a sweep, a trial budget, and an output path.
struct ExperimentSpec {
  SceneConfig scene;
  ExperimentKind kind = ExperimentKind::kRateVsPower;
  std::string arch = "digital";  // digital | fc | pc
  int trials = 20;
  std::string output_path = "results.csv";
  std::uint64_t seed = 1;

  std::vector<double> power_sweep_dbm{10.0, 20.0, 30.0};
  std::vector<double> crlb_sweep_db;   // defaults around the scene threshold
  std::vector<int> rf_sweep;           // defaults to divisors of M
  double beampattern_step_deg = 0.5;
  double estimate_blend = 0.5;         // beam weight toward the target in benches
  std::string dump_frame;              // optional echo-frame CSV dump

  std::vector<std::pair<std::string, std::string>> config_echo;
};

ExperimentSpec experiment_from_config(const ParsedConfig& config);
ExperimentSpec load_experiment(const std::string& path);

/// One aggregated measurement: sweep coordinate, metric name, mean over
/// trials, standard error (0 when only one trial contributed), contributing
/// trial count, and the architecture tag.
struct ResultRow {
  std::string sweep;
  std::string metric;
  double mean = 0.0;
  double stderr_mean = 0.0;
  int trials = 0;
  std::string arch;
};

struct ExperimentSummary {
  std::vector<ResultRow> rows;
  int failed_trials = 0;
  double wall_time_s = 0.0;
  std::string csv_path;
  std::string json_path;
};

/// Runs the sweep, writes the long-format CSV and the JSON summary, and
/// returns the rows. Per-trial solver errors are counted and skipped.
ExperimentSummary run_experiment(const ExperimentSpec& spec);

struct BaselineRow {
  std::string name;
  double sum_rate = 0.0;    // bits/s/Hz on true channels
  double trace_crlb = 0.0;  // rad^2, +inf when the target is unobservable
};

/// Designs one scene with every method: penalty-loop digital / hybrid
/// beamformers, maximum-ratio transmission, decomposition baselines, and the
/// perfect-CSI upper bound.
std::vector<BaselineRow> compare_baselines(const SceneConfig& scene);

void write_rows_csv(const std::string& path, const std::vector<ResultRow>& rows);

/// Library version string embedded into run summaries.
std::string version_string();

}  // namespace ssac
