// ssacsim: experiment runner for the sensing-assisted beamforming simulator.
//
// Subcommands:
//   run          execute the experiment described by a config file
//   compare      design one scene with every method and print the table
//   estimate     shortcut for the estimate-demo experiment
//   beampattern  shortcut for the beampattern experiment
//
// Exit codes: 0 success, 2 configuration error, 3 solver failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ssac/errors.hpp"
#include "ssac/harness.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::string> out;
  std::optional<std::string> arch;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "scenario/experiment config file")
      ->required();
  cmd->add_option("--seed", args.seed, "override the config seed");
  cmd->add_option("--trials", args.trials, "override the trial count");
  cmd->add_option("--out", args.out, "override the output CSV path");
  cmd->add_option("--arch", args.arch, "architecture: digital | fc | pc");
}

ssac::ExperimentSpec spec_from(const CommonArgs& args,
                               std::optional<ssac::ExperimentKind> forced_kind) {
  ssac::ExperimentSpec spec = ssac::load_experiment(args.config_path);
  if (forced_kind) spec.kind = *forced_kind;
  if (args.seed) spec.seed = *args.seed;
  if (args.trials) spec.trials = *args.trials;
  if (args.out) spec.output_path = *args.out;
  if (args.arch) spec.arch = *args.arch;
  if (spec.arch != "digital" && spec.arch != "fc" && spec.arch != "pc")
    throw ssac::ConfigError("arch must be digital, fc, or pc");
  return spec;
}

int run_spec(const ssac::ExperimentSpec& spec) {
  const ssac::ExperimentSummary summary = ssac::run_experiment(spec);
  std::cout << ssac::to_string(spec.kind) << ": " << summary.rows.size()
            << " rows -> " << summary.csv_path << " (summary " << summary.json_path
            << ", " << summary.wall_time_s << " s";
  if (summary.failed_trials > 0)
    std::cout << ", " << summary.failed_trials << " failed trials";
  std::cout << ")\n";
  return 0;
}

int run_compare(const CommonArgs& args) {
  ssac::ExperimentSpec spec = spec_from(args, std::nullopt);
  ssac::SceneConfig scene = spec.scene;
  scene.rng_seed = spec.seed;
  const auto table = ssac::compare_baselines(scene);

  std::printf("%-16s %12s %14s\n", "method", "sum_rate", "trace_crlb");
  std::vector<ssac::ResultRow> rows;
  for (const auto& row : table) {
    std::printf("%-16s %12.4f %14.6e\n", row.name.c_str(), row.sum_rate,
                row.trace_crlb);
    rows.push_back({row.name, "sum_rate", row.sum_rate, 0.0, 1, row.name});
    rows.push_back({row.name, "trace_crlb", row.trace_crlb, 0.0, 1, row.name});
  }
  if (args.out) {
    ssac::write_rows_csv(*args.out, rows);
    std::cout << "table -> " << *args.out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sensing-assisted beamforming simulator"};
  app.require_subcommand(1);

  CommonArgs run_args, compare_args, estimate_args, beam_args;
  std::string experiment_name;

  CLI::App* run = app.add_subcommand("run", "run the configured experiment");
  add_common(run, run_args);
  run->add_option("--experiment", experiment_name,
                  "override the experiment kind (beampattern, rmse-vs-power, "
                  "convergence, rate-vs-power, rate-vs-rf-chains, "
                  "rate-vs-crlb-threshold, estimate-demo)");

  CLI::App* compare = app.add_subcommand("compare", "design a scene with every method");
  add_common(compare, compare_args);

  CLI::App* estimate = app.add_subcommand("estimate", "run the estimation demo");
  add_common(estimate, estimate_args);

  CLI::App* beam = app.add_subcommand("beampattern", "emit transmit beampatterns");
  add_common(beam, beam_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      std::optional<ssac::ExperimentKind> kind;
      if (!experiment_name.empty()) kind = ssac::experiment_kind_from(experiment_name);
      return run_spec(spec_from(run_args, kind));
    }
    if (compare->parsed()) return run_compare(compare_args);
    if (estimate->parsed())
      return run_spec(spec_from(estimate_args, ssac::ExperimentKind::kEstimateDemo));
    if (beam->parsed())
      return run_spec(spec_from(beam_args, ssac::ExperimentKind::kBeampattern));
  } catch (const ssac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ssac::Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
