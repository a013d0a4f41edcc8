#include "ssac/channel.hpp"

#include <cmath>
#include <numbers>

#include "ssac/errors.hpp"

namespace ssac {

ChannelSet synth_true_channel(const SceneConfig& scene, const GeometryLinks& geometry,
                              Rng& rng) {
  const int m = scene.num_tx_antennas;
  const int k = scene.num_vues();
  const int n_nl = scene.num_nlos;
  const UlaSpec ula{m, scene.spacing_ratio};

  ChannelSet set;
  set.true_h.resize(m, k);
  set.los_h.resize(m, k);
  set.nlos_angles.resize(n_nl, k);
  set.nlos_gains.resize(n_nl, k);

  for (int u = 0; u < k; ++u) {
    const auto& link = geometry.vues[u];
    const double gain =
        std::sqrt(scene.ref_gain() * std::pow(link.bs_distance, -scene.pathloss_exp));
    Eigen::VectorXcd h = ula_steering(ula, link.bs_angle);
    set.los_h.col(u) = gain * h;
    for (int i = 0; i < n_nl; ++i) {
      // Ray power uniform in [-10, -5] dB relative to the LoS ray.
      const double power_db = rng.uniform(-10.0, -5.0);
      const double amp = std::pow(10.0, power_db / 20.0);
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double angle =
          rng.uniform(-std::numbers::pi / 2.0, std::numbers::pi / 2.0);
      const std::complex<double> a = std::polar(amp, phase);
      set.nlos_angles(i, u) = angle;
      set.nlos_gains(i, u) = a;
      h += a * ula_steering(ula, angle);
    }
    set.true_h.col(u) = gain * h;
  }
  return set;
}

Eigen::MatrixXcd reconstruct_los_channel(const SceneConfig& scene,
                                         const std::vector<double>& bs_angles,
                                         const std::vector<double>& bs_distances) {
  const int m = scene.num_tx_antennas;
  const int k = static_cast<int>(bs_angles.size());
  const UlaSpec ula{m, scene.spacing_ratio};
  Eigen::MatrixXcd h(m, k);
  for (int u = 0; u < k; ++u) {
    const double gain =
        std::sqrt(scene.ref_gain() * std::pow(bs_distances[u], -scene.pathloss_exp));
    h.col(u) = gain * ula_steering(ula, bs_angles[u]);
  }
  return h;
}

SensingLinkParams make_sensing_link(const SceneConfig& scene,
                                    const GeometryLinks& geometry, int index,
                                    double phase) {
  const bool is_target = index < 0;
  const LinkGeometry& link = is_target ? geometry.target : geometry.vues[index];
  const double rcs = is_target ? scene.rcs_target() : scene.rcs_vue();
  const double amp = std::sqrt(scene.ref_gain() * rcs /
                               (link.bs_distance * link.bs_distance *
                                link.sensor_distance * link.sensor_distance));
  SensingLinkParams params;
  params.reflection = std::polar(amp, phase);
  params.azimuth = link.azimuth;
  params.elevation = link.elevation;
  params.bs_angle = link.bs_angle;
  return params;
}

Eigen::MatrixXcd sensing_link_matrix(const SensingLinkParams& params,
                                     const UlaSpec& ula, const UpaSpec& upa) {
  const Eigen::VectorXcd a = upa_steering(upa, params.azimuth, params.elevation);
  const Eigen::VectorXcd b = ula_steering(ula, params.bs_angle);
  return params.reflection * a * b.adjoint();
}

Eigen::MatrixXcd mrt_beamformer(const Eigen::MatrixXcd& channels, double power) {
  const int k = static_cast<int>(channels.cols());
  Eigen::MatrixXcd w(channels.rows(), k);
  const double per_beam = std::sqrt(power / k);
  for (int u = 0; u < k; ++u) {
    const double norm = channels.col(u).norm();
    if (norm <= 0.0) throw ZeroChannel("MRT beam direction undefined for zero channel");
    w.col(u) = per_beam * channels.col(u) / norm;
  }
  return w;
}

}  // namespace ssac
