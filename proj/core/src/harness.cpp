#include "ssac/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <thread>

#include <nlohmann/json.hpp>

#include "ssac/errors.hpp"
#include "ssac/estimator.hpp"

namespace ssac {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// Deterministic trial dispatch: results land in slots indexed by trial.
template <typename Fn>
void parallel_trials(int trials, const Fn& fn) {
  const unsigned workers =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                         static_cast<unsigned>(trials));
  if (workers <= 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned i = 0; i < workers; ++i)
    pool.emplace_back([&] {
      for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) fn(t);
    });
  for (auto& th : pool) th.join();
}

// Accumulates per-(sweep, metric, arch) samples in insertion order.
class RowCollector {
 public:
  void add(const std::string& sweep, const std::string& metric,
           const std::string& arch, double value) {
    const Key key{sweep, metric, arch};
    auto it = index_.find(key);
    if (it == index_.end()) {
      index_.emplace(key, order_.size());
      order_.push_back(key);
      samples_.emplace_back();
      it = index_.find(key);
    }
    samples_[it->second].push_back(value);
  }

  std::vector<ResultRow> rows() const {
    std::vector<ResultRow> out;
    out.reserve(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) {
      const auto& samples = samples_[i];
      ResultRow row;
      row.sweep = order_[i].sweep;
      row.metric = order_[i].metric;
      row.arch = order_[i].arch;
      row.trials = static_cast<int>(samples.size());
      double mean = 0.0;
      for (double v : samples) mean += v;
      mean /= std::max<std::size_t>(samples.size(), 1);
      row.mean = mean;
      if (samples.size() >= 2) {
        double ss = 0.0;
        for (double v : samples) ss += (v - mean) * (v - mean);
        row.stderr_mean =
            std::sqrt(ss / (samples.size() - 1) / static_cast<double>(samples.size()));
      }
      out.push_back(row);
    }
    return out;
  }

 private:
  struct Key {
    std::string sweep, metric, arch;
    bool operator<(const Key& o) const {
      return std::tie(sweep, metric, arch) < std::tie(o.sweep, o.metric, o.arch);
    }
  };
  std::map<Key, std::size_t> index_;
  std::vector<Key> order_;
  std::vector<std::vector<double>> samples_;
};

struct TrialSample {
  std::string sweep, metric, arch;
  double value = 0.0;
};

PddProblem problem_for(const SceneConfig& scene, const GeometryLinks& geometry,
                       const ChannelSet& channels, bool perfect_csi = false) {
  return make_pdd_problem(scene, geometry,
                          perfect_csi ? channels.true_h : channels.los_h,
                          channels.true_h);
}

PddConfig solver_config() {
  PddConfig cfg;
  cfg.record_trace = false;
  return cfg;
}

Eigen::MatrixXcd design_for_arch(const PddProblem& problem, const std::string& arch,
                                 const PddConfig& cfg) {
  if (arch == "digital") return optimize_digital(problem, cfg).w;
  if (arch == "fc")
    return optimize_hybrid(problem, Architecture::kFullyConnected, cfg).base.w;
  if (arch == "pc")
    return optimize_hybrid(problem, Architecture::kPartiallyConnected, cfg).base.w;
  throw ConfigError("unknown architecture: " + arch);
}

std::vector<AngleEstimate> true_vue_angles(const GeometryLinks& geometry) {
  std::vector<AngleEstimate> angles;
  angles.reserve(geometry.vues.size());
  for (const auto& v : geometry.vues) angles.push_back({v.azimuth, v.elevation});
  return angles;
}

void dump_frame_csv(const std::string& path, const EchoFrame& frame) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open frame dump path: " + path);
  out << "block,row,col,re,im\n";
  const auto emit = [&](const char* name, const Eigen::MatrixXcd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        out << name << ',' << i << ',' << j << ',' << format_double(m(i, j).real())
            << ',' << format_double(m(i, j).imag()) << '\n';
  };
  emit("received", frame.received);
  emit("transmitted", frame.transmitted);
}

// ---- individual experiments ----------------------------------------------

void run_rate_vs_power(const ExperimentSpec& spec, RowCollector& rows,
                       std::atomic<int>& failures) {
  for (double p_dbm : spec.power_sweep_dbm) {
    SceneConfig scene = spec.scene;
    scene.power_budget_dbm = p_dbm;
    const GeometryLinks geometry = compute_geometry(scene);
    const std::string sweep = format_double(p_dbm);

    std::vector<std::vector<TrialSample>> per_trial(spec.trials);
    parallel_trials(spec.trials, [&](int t) {
      try {
        Rng rng = Rng::stream(spec.seed, t);
        const ChannelSet channels = synth_true_channel(scene, geometry, rng);
        const PddProblem problem = problem_for(scene, geometry, channels);
        const Eigen::MatrixXcd w = design_for_arch(problem, spec.arch, solver_config());
        per_trial[t].push_back(
            {sweep, "sum_rate", spec.arch,
             sinr_and_rate(problem.eval_channels, w, problem.noise_comm).sum_rate});
        per_trial[t].push_back(
            {sweep, "trace_crlb", spec.arch, trace_crlb_physical(problem, w)});
      } catch (const Error&) {
        ++failures;
      }
    });
    for (const auto& samples : per_trial)
      for (const auto& s : samples) rows.add(s.sweep, s.metric, s.arch, s.value);
  }
}

void run_rate_vs_crlb(const ExperimentSpec& spec, RowCollector& rows,
                      std::atomic<int>& failures) {
  std::vector<double> thresholds = spec.crlb_sweep_db;
  if (thresholds.empty()) {
    for (int i = -2; i <= 2; ++i)
      thresholds.push_back(spec.scene.crlb_threshold_db + 3.0 * i);
  }
  for (double eta_db : thresholds) {
    SceneConfig scene = spec.scene;
    scene.crlb_threshold_db = eta_db;
    const GeometryLinks geometry = compute_geometry(scene);
    const std::string sweep = format_double(eta_db);

    std::vector<std::vector<TrialSample>> per_trial(spec.trials);
    parallel_trials(spec.trials, [&](int t) {
      try {
        Rng rng = Rng::stream(spec.seed, t);
        const ChannelSet channels = synth_true_channel(scene, geometry, rng);
        const PddProblem problem = problem_for(scene, geometry, channels);
        const Eigen::MatrixXcd w = design_for_arch(problem, spec.arch, solver_config());
        per_trial[t].push_back(
            {sweep, "sum_rate", spec.arch,
             sinr_and_rate(problem.eval_channels, w, problem.noise_comm).sum_rate});
        per_trial[t].push_back(
            {sweep, "trace_crlb", spec.arch, trace_crlb_physical(problem, w)});
      } catch (const Error&) {
        ++failures;
      }
    });
    for (const auto& samples : per_trial)
      for (const auto& s : samples) rows.add(s.sweep, s.metric, s.arch, s.value);
  }
}

void run_rate_vs_rf_chains(const ExperimentSpec& spec, RowCollector& rows,
                           std::atomic<int>& failures) {
  std::vector<int> rf_values = spec.rf_sweep;
  if (rf_values.empty()) {
    for (int rf = spec.scene.num_vues(); rf <= spec.scene.num_tx_antennas; rf *= 2)
      if (spec.scene.num_tx_antennas % rf == 0) rf_values.push_back(rf);
  }
  for (int rf : rf_values) {
    if (rf < spec.scene.num_vues() || rf > spec.scene.num_tx_antennas ||
        spec.scene.num_tx_antennas % rf != 0)
      throw ConfigError("rf_sweep values must divide tx_antennas and satisfy K <= N_rf <= M");
  }

  for (int rf : rf_values) {
    SceneConfig scene = spec.scene;
    scene.num_rf_chains = rf;
    const GeometryLinks geometry = compute_geometry(scene);
    const std::string sweep = std::to_string(rf);

    std::vector<std::vector<TrialSample>> per_trial(spec.trials);
    parallel_trials(spec.trials, [&](int t) {
      try {
        Rng rng = Rng::stream(spec.seed, t);
        const ChannelSet channels = synth_true_channel(scene, geometry, rng);
        const PddProblem problem = problem_for(scene, geometry, channels);
        const PddConfig cfg = solver_config();

        const PddResult digital = optimize_digital(problem, cfg);
        const auto fc = optimize_hybrid(problem, Architecture::kFullyConnected, cfg);
        const auto pc = optimize_hybrid(problem, Architecture::kPartiallyConnected, cfg);
        const HadBeamformer dec_fc = decompose_baseline(
            digital.w, rf, Architecture::kFullyConnected, problem.power);
        const HadBeamformer dec_pc = decompose_baseline(
            digital.w, rf, Architecture::kPartiallyConnected, problem.power);

        const auto rate = [&](const Eigen::MatrixXcd& w) {
          return sinr_and_rate(problem.eval_channels, w, problem.noise_comm).sum_rate;
        };
        per_trial[t].push_back({sweep, "sum_rate", "digital", digital.rate});
        per_trial[t].push_back({sweep, "sum_rate", "fc", fc.base.rate});
        per_trial[t].push_back({sweep, "sum_rate", "pc", pc.base.rate});
        per_trial[t].push_back({sweep, "sum_rate", "fc_decomposed", rate(dec_fc.effective())});
        per_trial[t].push_back({sweep, "sum_rate", "pc_decomposed", rate(dec_pc.effective())});
      } catch (const Error&) {
        ++failures;
      }
    });
    for (const auto& samples : per_trial)
      for (const auto& s : samples) rows.add(s.sweep, s.metric, s.arch, s.value);
  }
}

void run_beampattern(const ExperimentSpec& spec, RowCollector& rows,
                     std::atomic<int>& failures) {
  const SceneConfig& scene = spec.scene;
  const GeometryLinks geometry = compute_geometry(scene);
  try {
    Rng rng = Rng::stream(spec.seed, 0);
    const ChannelSet channels = synth_true_channel(scene, geometry, rng);
    const PddProblem problem = problem_for(scene, geometry, channels);
    const Eigen::MatrixXcd w_opt = design_for_arch(problem, spec.arch, solver_config());
    const Eigen::MatrixXcd w_mrt = mrt_beamformer(problem.design_channels, problem.power);

    for (double deg = -90.0; deg <= 90.0 + 1e-9; deg += spec.beampattern_step_deg) {
      const Eigen::VectorXcd b = ula_steering(problem.ula, deg_to_rad(deg));
      const std::string sweep = format_double(deg);
      rows.add(sweep, "beam_power", spec.arch, (w_opt.adjoint() * b).squaredNorm());
      rows.add(sweep, "beam_power", "mrt", (w_mrt.adjoint() * b).squaredNorm());
    }
  } catch (const Error&) {
    ++failures;
  }
}

void run_convergence(const ExperimentSpec& spec, RowCollector& rows,
                     std::atomic<int>& failures) {
  const SceneConfig& scene = spec.scene;
  const GeometryLinks geometry = compute_geometry(scene);
  try {
    Rng rng = Rng::stream(spec.seed, 0);
    const ChannelSet channels = synth_true_channel(scene, geometry, rng);
    const PddProblem problem = problem_for(scene, geometry, channels);
    PddConfig cfg = solver_config();
    cfg.record_trace = true;

    std::vector<PddTraceRow> trace;
    if (spec.arch == "digital") {
      trace = optimize_digital(problem, cfg).trace;
    } else if (spec.arch == "fc") {
      trace = optimize_hybrid(problem, Architecture::kFullyConnected, cfg).base.trace;
    } else if (spec.arch == "pc") {
      trace = optimize_hybrid(problem, Architecture::kPartiallyConnected, cfg).base.trace;
    } else {
      throw ConfigError("unknown architecture: " + spec.arch);
    }
    for (const auto& row : trace) {
      const std::string sweep = std::to_string(row.outer);
      rows.add(sweep, "al", spec.arch, row.al);
      rows.add(sweep, "sum_rate", spec.arch, row.rate);
      rows.add(sweep, "violation", spec.arch, row.violation);
      rows.add(sweep, "trace_crlb", spec.arch, row.trace_crlb);
      rows.add(sweep, "rho1", spec.arch, row.rho1);
      if (spec.arch != "digital") rows.add(sweep, "rho2", spec.arch, row.rho2);
    }
  } catch (const Error&) {
    ++failures;
  }
}

void run_rmse_vs_power(const ExperimentSpec& spec, RowCollector& rows,
                       std::atomic<int>& failures) {
  for (double p_dbm : spec.power_sweep_dbm) {
    SceneConfig scene = spec.scene;
    scene.power_budget_dbm = p_dbm;
    const GeometryLinks geometry = compute_geometry(scene);
    const std::string sweep = format_double(p_dbm);

    // Fixed blend beamformer: deterministic, target-aware, power-feasible.
    Rng ref_rng = Rng::stream(spec.seed, 0);
    const ChannelSet ref_channels = synth_true_channel(scene, geometry, ref_rng);
    const PddProblem problem = problem_for(scene, geometry, ref_channels);
    const Eigen::MatrixXcd w = blend_beamformer(problem, spec.estimate_blend);

    const double crlb_trace = trace_crlb_physical(problem, w);
    rows.add(sweep, "sqrt_trace_crlb", spec.arch, std::sqrt(crlb_trace));

    const Eigen::MatrixXcd filter =
        vue_null_filter(problem.upa, true_vue_angles(geometry));

    EstimatorConfig est_cfg;
    est_cfg.assumed_bs_angle = geometry.target.bs_angle;

    std::vector<std::vector<TrialSample>> per_trial(spec.trials);
    parallel_trials(spec.trials, [&](int t) {
      try {
        Rng rng = Rng::stream(spec.seed, 1000 + t);
        const EchoFrame frame = synth_echo(scene, geometry, w, rng);

        const AngleEstimate mle = rd_mle(frame, filter, est_cfg);
        const double sq_mle =
            std::pow(mle.azimuth - frame.target_truth.azimuth, 2) +
            std::pow(mle.elevation - frame.target_truth.elevation, 2);
        per_trial[t].push_back({sweep, "sq_error_rd_mle", spec.arch, sq_mle});

        EchoFrame filtered = frame;
        filtered.received = filter * frame.received;
        const auto music = music_2d(filtered, 1, est_cfg);
        const double sq_music =
            std::pow(music[0].azimuth - frame.target_truth.azimuth, 2) +
            std::pow(music[0].elevation - frame.target_truth.elevation, 2);
        per_trial[t].push_back({sweep, "sq_error_music", spec.arch, sq_music});
      } catch (const Error&) {
        ++failures;
      }
    });
    for (const auto& samples : per_trial)
      for (const auto& s : samples) rows.add(s.sweep, s.metric, s.arch, s.value);
  }
}

void run_estimate_demo(const ExperimentSpec& spec, RowCollector& rows,
                       std::atomic<int>& failures) {
  const SceneConfig& scene = spec.scene;
  const GeometryLinks geometry = compute_geometry(scene);
  try {
    Rng rng = Rng::stream(spec.seed, 0);
    const ChannelSet channels = synth_true_channel(scene, geometry, rng);
    const PddProblem problem = problem_for(scene, geometry, channels);
    const Eigen::MatrixXcd w = design_for_arch(problem, spec.arch, solver_config());

    const EchoFrame frame = synth_echo(scene, geometry, w, rng);
    if (!spec.dump_frame.empty()) dump_frame_csv(spec.dump_frame, frame);

    EstimatorConfig est_cfg;

    // Strong reflectors first: subspace search on the raw frame.
    const auto vues = music_2d(frame, scene.num_vues(), est_cfg);
    // Greedy match of estimates to ground truth by angle distance.
    std::vector<bool> used(vues.size(), false);
    for (int k = 0; k < scene.num_vues(); ++k) {
      const auto& truth = geometry.vues[k];
      int best = -1;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < vues.size(); ++i) {
        if (used[i]) continue;
        const double d = std::pow(vues[i].azimuth - truth.azimuth, 2) +
                         std::pow(vues[i].elevation - truth.elevation, 2);
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(i);
        }
      }
      used[best] = true;
      const std::string sweep = "vue" + std::to_string(k);
      rows.add(sweep, "azimuth_deg", "music", rad_to_deg(vues[best].azimuth));
      rows.add(sweep, "elevation_deg", "music", rad_to_deg(vues[best].elevation));
      rows.add(sweep, "angle_error_deg", "music", rad_to_deg(std::sqrt(best_d)));
      const Eigen::Vector3d pos = localize_from_aoa(
          vues[best].azimuth, vues[best].elevation, scene.sensor_position,
          scene.sensor_position.z() - scene.vue_positions[k].z());
      rows.add(sweep, "position_error_m", "music",
               (pos - scene.vue_positions[k]).norm());
    }

    // Weak target: null the reflectors, then the reduced matched-filter search.
    const Eigen::MatrixXcd filter =
        vue_null_filter(problem.upa, true_vue_angles(geometry));
    EstimatorConfig mle_cfg;
    mle_cfg.assumed_bs_angle = geometry.target.bs_angle;
    const AngleEstimate est = rd_mle(frame, filter, mle_cfg);
    rows.add("target", "azimuth_deg", "rd_mle", rad_to_deg(est.azimuth));
    rows.add("target", "elevation_deg", "rd_mle", rad_to_deg(est.elevation));
    const double err = std::sqrt(std::pow(est.azimuth - geometry.target.azimuth, 2) +
                                 std::pow(est.elevation - geometry.target.elevation, 2));
    rows.add("target", "angle_error_deg", "rd_mle", rad_to_deg(err));
    const Eigen::Vector3d pos = localize_from_aoa(
        est.azimuth, est.elevation, scene.sensor_position,
        scene.sensor_position.z() - scene.target_position.z());
    rows.add("target", "position_error_m", "rd_mle",
             (pos - scene.target_position).norm());
    const std::complex<double> alpha =
        estimate_alpha(frame, est.azimuth, est.elevation, mle_cfg.assumed_bs_angle);
    rows.add("target", "alpha_mag_error", "rd_mle",
             std::abs(std::abs(alpha) - std::abs(frame.target_truth.reflection)));
  } catch (const Error&) {
    ++failures;
  }
}

}  // namespace

ExperimentKind experiment_kind_from(const std::string& name) {
  if (name == "beampattern") return ExperimentKind::kBeampattern;
  if (name == "rmse-vs-power") return ExperimentKind::kRmseVsPower;
  if (name == "convergence") return ExperimentKind::kConvergence;
  if (name == "rate-vs-power") return ExperimentKind::kRateVsPower;
  if (name == "rate-vs-rf-chains") return ExperimentKind::kRateVsRfChains;
  if (name == "rate-vs-crlb-threshold") return ExperimentKind::kRateVsCrlbThreshold;
  if (name == "estimate-demo") return ExperimentKind::kEstimateDemo;
  throw ConfigError("unknown experiment kind: " + name);
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kBeampattern: return "beampattern";
    case ExperimentKind::kRmseVsPower: return "rmse-vs-power";
    case ExperimentKind::kConvergence: return "convergence";
    case ExperimentKind::kRateVsPower: return "rate-vs-power";
    case ExperimentKind::kRateVsRfChains: return "rate-vs-rf-chains";
    case ExperimentKind::kRateVsCrlbThreshold: return "rate-vs-crlb-threshold";
    case ExperimentKind::kEstimateDemo: return "estimate-demo";
  }
  return "unknown";
}

std::string to_string(Architecture arch) {
  return arch == Architecture::kFullyConnected ? "fc" : "pc";
}

Architecture architecture_from(const std::string& name) {
  if (name == "fc") return Architecture::kFullyConnected;
  if (name == "pc") return Architecture::kPartiallyConnected;
  throw ConfigError("unknown hybrid architecture: " + name);
}

ExperimentSpec experiment_from_config(const ParsedConfig& config) {
  ExperimentSpec spec;
  spec.scene = scene_from_config(config);
  spec.kind = experiment_kind_from(config.get_or("experiment", "rate-vs-power"));
  spec.arch = config.get_or("arch", "digital");
  if (spec.arch != "digital" && spec.arch != "fc" && spec.arch != "pc")
    throw ConfigError("arch must be digital, fc, or pc");
  spec.trials = config.get_int_or("trials", 20);
  if (spec.trials < 1) throw ConfigError("trials must be >= 1");
  spec.output_path = config.get_or("out", "results.csv");
  spec.seed = static_cast<std::uint64_t>(config.get_int_or("seed", 1));
  if (config.has("power_sweep_dbm"))
    spec.power_sweep_dbm = parse_double_list(config.get("power_sweep_dbm"));
  if (config.has("crlb_sweep_db"))
    spec.crlb_sweep_db = parse_double_list(config.get("crlb_sweep_db"));
  if (config.has("rf_sweep")) spec.rf_sweep = parse_int_list(config.get("rf_sweep"));
  spec.beampattern_step_deg = config.get_double_or("beampattern_step_deg", 0.5);
  spec.estimate_blend = config.get_double_or("estimate_blend", 0.5);
  spec.dump_frame = config.get_or("dump_frame", "");
  spec.config_echo = config.entries;
  return spec;
}

ExperimentSpec load_experiment(const std::string& path) {
  return experiment_from_config(load_config_file(path));
}

ExperimentSummary run_experiment(const ExperimentSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  RowCollector rows;
  std::atomic<int> failures{0};

  switch (spec.kind) {
    case ExperimentKind::kBeampattern: run_beampattern(spec, rows, failures); break;
    case ExperimentKind::kRmseVsPower: run_rmse_vs_power(spec, rows, failures); break;
    case ExperimentKind::kConvergence: run_convergence(spec, rows, failures); break;
    case ExperimentKind::kRateVsPower: run_rate_vs_power(spec, rows, failures); break;
    case ExperimentKind::kRateVsRfChains:
      run_rate_vs_rf_chains(spec, rows, failures);
      break;
    case ExperimentKind::kRateVsCrlbThreshold:
      run_rate_vs_crlb(spec, rows, failures);
      break;
    case ExperimentKind::kEstimateDemo: run_estimate_demo(spec, rows, failures); break;
  }

  ExperimentSummary summary;
  summary.rows = rows.rows();

  // Derived root-mean-square rows with delta-method standard errors.
  std::vector<ResultRow> derived;
  for (const auto& row : summary.rows) {
    if (row.metric.rfind("sq_error_", 0) != 0 || row.mean <= 0.0) continue;
    ResultRow rmse = row;
    rmse.metric = "rmse_" + row.metric.substr(9);
    rmse.mean = std::sqrt(row.mean);
    rmse.stderr_mean = row.stderr_mean / (2.0 * rmse.mean);
    derived.push_back(rmse);
  }
  summary.rows.insert(summary.rows.end(), derived.begin(), derived.end());

  summary.failed_trials = failures.load();
  summary.csv_path = spec.output_path;
  write_rows_csv(summary.csv_path, summary.rows);

  summary.json_path = spec.output_path;
  if (summary.json_path.size() >= 4 &&
      summary.json_path.substr(summary.json_path.size() - 4) == ".csv")
    summary.json_path = summary.json_path.substr(0, summary.json_path.size() - 4);
  summary.json_path += ".json";

  summary.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  nlohmann::json echo = nlohmann::json::object();
  for (const auto& [k, v] : spec.config_echo) echo[k] = v;
  const nlohmann::json doc = {
      {"version", version_string()},
      {"experiment", to_string(spec.kind)},
      {"csv", summary.csv_path},
      {"rows", summary.rows.size()},
      {"failed_trials", summary.failed_trials},
      {"wall_time_s", summary.wall_time_s},
      {"config", echo},
  };
  std::ofstream json_out(summary.json_path);
  if (!json_out) throw ConfigError("cannot open output path: " + summary.json_path);
  json_out << doc.dump(2) << '\n';
  return summary;
}

std::vector<BaselineRow> compare_baselines(const SceneConfig& scene) {
  const GeometryLinks geometry = compute_geometry(scene);
  Rng rng(scene.rng_seed);
  const ChannelSet channels = synth_true_channel(scene, geometry, rng);
  const PddProblem problem = problem_for(scene, geometry, channels);
  const PddProblem perfect = problem_for(scene, geometry, channels, true);
  const PddConfig cfg = solver_config();

  const auto rate = [&](const Eigen::MatrixXcd& w) {
    return sinr_and_rate(problem.eval_channels, w, problem.noise_comm).sum_rate;
  };

  std::vector<BaselineRow> table;
  const PddResult digital = optimize_digital(problem, cfg);
  table.push_back({"pdd-digital", digital.rate, digital.trace_crlb});

  const auto fc = optimize_hybrid(problem, Architecture::kFullyConnected, cfg);
  table.push_back({"pdd-fc-had", fc.base.rate, fc.base.trace_crlb});

  const auto pc = optimize_hybrid(problem, Architecture::kPartiallyConnected, cfg);
  table.push_back({"pdd-pc-had", pc.base.rate, pc.base.trace_crlb});

  const Eigen::MatrixXcd w_mrt = mrt_beamformer(problem.design_channels, problem.power);
  table.push_back({"mrt", rate(w_mrt), trace_crlb_physical(problem, w_mrt)});

  const HadBeamformer dec_fc = decompose_baseline(
      digital.w, scene.num_rf_chains, Architecture::kFullyConnected, problem.power);
  table.push_back({"decomposed-fc", rate(dec_fc.effective()),
                   trace_crlb_physical(problem, dec_fc.effective())});

  const HadBeamformer dec_pc = decompose_baseline(
      digital.w, scene.num_rf_chains, Architecture::kPartiallyConnected, problem.power);
  table.push_back({"decomposed-pc", rate(dec_pc.effective()),
                   trace_crlb_physical(problem, dec_pc.effective())});

  const PddResult upper = optimize_digital(perfect, cfg);
  table.push_back({"perfect-csi", upper.rate, upper.trace_crlb});
  return table;
}

void write_rows_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output path: " + path);
  out << "sweep,metric,mean,stderr,trials,arch\n";
  for (const auto& row : rows)
    out << row.sweep << ',' << row.metric << ',' << format_double(row.mean) << ','
        << format_double(row.stderr_mean) << ',' << row.trials << ',' << row.arch
        << '\n';
}

std::string version_string() {
#ifdef SSAC_VERSION
  return std::string("ssac ") + SSAC_VERSION;
#else
  return "ssac 0.0.0";
#endif
}

}  // namespace ssac
