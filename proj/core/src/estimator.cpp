#include "ssac/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ssac/errors.hpp"

namespace ssac {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

EchoFrame synth_echo(const SceneConfig& scene, const GeometryLinks& geometry,
                     const Eigen::MatrixXcd& w, Rng& rng) {
  const int n = scene.upa_size();
  const int l = scene.snapshots;
  const int k = scene.num_vues();

  EchoFrame frame;
  frame.ula = UlaSpec{scene.num_tx_antennas, scene.spacing_ratio};
  frame.upa = UpaSpec{scene.upa_rows, scene.upa_cols, scene.spacing_ratio};
  frame.noise_power = scene.noise_radar_w();

  const SensingLinkParams target_link =
      make_sensing_link(scene, geometry, -1, rng.uniform(0.0, 2.0 * kPi));
  frame.target_truth.azimuth = target_link.azimuth;
  frame.target_truth.elevation = target_link.elevation;
  frame.target_truth.bs_angle = target_link.bs_angle;
  frame.target_truth.reflection = target_link.reflection;

  Eigen::MatrixXcd channel = sensing_link_matrix(target_link, frame.ula, frame.upa);
  frame.vue_truth.reserve(k);
  for (int u = 0; u < k; ++u) {
    const SensingLinkParams vue_link =
        make_sensing_link(scene, geometry, u, rng.uniform(0.0, 2.0 * kPi));
    frame.vue_truth.push_back(vue_link);
    channel += sensing_link_matrix(vue_link, frame.ula, frame.upa);
  }

  Eigen::MatrixXcd symbols(static_cast<int>(w.cols()), l);
  for (int t = 0; t < l; ++t)
    for (int u = 0; u < w.cols(); ++u) symbols(u, t) = rng.complex_normal();
  frame.transmitted = w * symbols;

  frame.received = channel * frame.transmitted;
  if (frame.noise_power > 0.0) {
    const double sigma = std::sqrt(frame.noise_power);
    for (int t = 0; t < l; ++t)
      for (int i = 0; i < n; ++i) frame.received(i, t) += sigma * rng.complex_normal();
  }
  return frame;
}

Eigen::MatrixXcd vue_null_filter(const UpaSpec& upa,
                                 const std::vector<AngleEstimate>& vue_angles) {
  const int n = upa.size();
  if (vue_angles.empty()) return Eigen::MatrixXcd::Identity(n, n);
  if (static_cast<int>(vue_angles.size()) >= n)
    throw RankDeficiency("more nulls requested than array dimensions");

  Eigen::MatrixXcd steering(n, vue_angles.size());
  for (std::size_t u = 0; u < vue_angles.size(); ++u)
    steering.col(u) = upa_steering(upa, vue_angles[u].azimuth, vue_angles[u].elevation);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(steering, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < 1e-10 * sv(0))
    throw RankDeficiency("VUE steering vectors are numerically dependent");

  const Eigen::MatrixXcd basis = svd.matrixU();
  return Eigen::MatrixXcd::Identity(n, n) - basis * basis.adjoint();
}

namespace {

struct GridPoint {
  double azimuth = 0.0;
  double elevation = 0.0;
  double value = -1.0;
};

// Coarse sweep over the full angle ranges. Cell centers stay off the domain
// endpoints.
template <typename Objective>
GridPoint coarse_search(const Objective& objective, double step) {
  GridPoint best;
  for (double az = -kPi / 2.0 + step / 2.0; az < kPi / 2.0; az += step)
    for (double el = step / 2.0; el < kPi; el += step) {
      const double v = objective(az, el);
      if (v > best.value) best = {az, el, v};
    }
  return best;
}

// Shrinking local grids around the best point; the center is kept, so the
// value is monotone across rounds.
template <typename Objective>
GridPoint refine(const Objective& objective, GridPoint best, double step,
                 const EstimatorConfig& cfg) {
  for (int round = 0; round < cfg.refine_rounds; ++round) {
    const double sub = step / cfg.refine_factor;
    GridPoint local = best;
    for (int i = -cfg.refine_factor; i <= cfg.refine_factor; ++i) {
      const double az = best.azimuth + i * sub;
      if (az <= -kPi / 2.0 || az >= kPi / 2.0) continue;
      for (int j = -cfg.refine_factor; j <= cfg.refine_factor; ++j) {
        const double el = best.elevation + j * sub;
        if (el <= 0.0 || el >= kPi) continue;
        const double v = objective(az, el);
        if (v > local.value) local = {az, el, v};
      }
    }
    best = local;
    step = sub;
  }
  return best;
}

}  // namespace

AngleEstimate rd_mle(const EchoFrame& frame, const Eigen::MatrixXcd& filter,
                     const EstimatorConfig& cfg) {
  // The matched-filter statistic |g^H y| collapses to |a(az, el)^H C b| with
  // C = Y_filtered X^H, so the sweep costs one inner product per candidate.
  const Eigen::MatrixXcd c = (filter * frame.received) * frame.transmitted.adjoint();
  const Eigen::VectorXcd v = c * ula_steering(frame.ula, cfg.assumed_bs_angle);

  const auto objective = [&](double az, double el) {
    return std::abs(upa_steering(frame.upa, az, el).dot(v));
  };

  GridPoint best = coarse_search(objective, cfg.coarse_step);
  if (!(best.value > 0.0))
    throw GridExhausted("matched filter output is zero everywhere");
  best = refine(objective, best, cfg.coarse_step, cfg);
  return {best.azimuth, best.elevation};
}

std::complex<double> estimate_alpha(const EchoFrame& frame, double azimuth,
                                    double elevation, double bs_angle) {
  const Eigen::VectorXcd a = upa_steering(frame.upa, azimuth, elevation);
  const Eigen::VectorXcd b = ula_steering(frame.ula, bs_angle);

  // g = vec(a b^H X): g^H y = a^H Y X^H b and |g|^2 = N b^H X X^H b.
  const Eigen::VectorXcd xb = frame.transmitted.adjoint() * b;
  const double g_norm2 = a.squaredNorm() * xb.squaredNorm();
  if (g_norm2 <= 0.0) throw ZeroSteering("matched filter is numerically zero");

  const std::complex<double> corr = a.dot(frame.received * xb);
  return corr / g_norm2;
}

std::vector<AngleEstimate> music_2d(const EchoFrame& frame, int num_sources,
                                    const EstimatorConfig& cfg) {
  const int n = static_cast<int>(frame.received.rows());
  const int l = static_cast<int>(frame.received.cols());
  if (num_sources < 1 || num_sources >= n)
    throw CovarianceRankDeficient("source count must lie strictly inside the array size");

  const Eigen::MatrixXcd cov =
      frame.received * frame.received.adjoint() / static_cast<double>(l);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(cov);
  const auto& values = eig.eigenvalues();  // ascending
  if (!(values(n - num_sources) > 1e-12 * std::max(values(n - 1), 0.0)))
    throw CovarianceRankDeficient("sample covariance cannot support the source count");

  const Eigen::MatrixXcd noise_basis = eig.eigenvectors().leftCols(n - num_sources);
  const auto objective = [&](double az, double el) {
    const Eigen::VectorXcd a = upa_steering(frame.upa, az, el);
    const double denom = (noise_basis.adjoint() * a).squaredNorm();
    return 1.0 / std::max(denom, 1e-300);
  };

  // Evaluate the coarse spectrum once, then pick the strongest local maxima.
  std::vector<double> az_grid, el_grid;
  for (double az = -kPi / 2.0 + cfg.coarse_step / 2.0; az < kPi / 2.0;
       az += cfg.coarse_step)
    az_grid.push_back(az);
  for (double el = cfg.coarse_step / 2.0; el < kPi; el += cfg.coarse_step)
    el_grid.push_back(el);

  const int na = static_cast<int>(az_grid.size());
  const int ne = static_cast<int>(el_grid.size());
  Eigen::MatrixXd spectrum(na, ne);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < ne; ++j) spectrum(i, j) = objective(az_grid[i], el_grid[j]);

  std::vector<GridPoint> peaks;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < ne; ++j) {
      const double v = spectrum(i, j);
      bool is_peak = true;
      for (int di = -1; di <= 1 && is_peak; ++di)
        for (int dj = -1; dj <= 1 && is_peak; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= na || jj >= ne) continue;
          if (spectrum(ii, jj) > v) is_peak = false;
        }
      if (is_peak) peaks.push_back({az_grid[i], el_grid[j], v});
    }
  std::sort(peaks.begin(), peaks.end(),
            [](const GridPoint& a, const GridPoint& b) { return a.value > b.value; });
  if (static_cast<int>(peaks.size()) < num_sources)
    throw CovarianceRankDeficient("spectrum has fewer peaks than requested sources");

  std::vector<AngleEstimate> estimates;
  estimates.reserve(num_sources);
  for (int s = 0; s < num_sources; ++s) {
    const GridPoint refined = refine(objective, peaks[s], cfg.coarse_step, cfg);
    estimates.push_back({refined.azimuth, refined.elevation});
  }
  return estimates;
}

}  // namespace ssac
