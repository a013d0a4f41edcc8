#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ssac/arrays.hpp"
#include "ssac/rng.hpp"
#include "ssac/scene.hpp"

namespace ssac {

/// Downlink channels of all users. `true_h` carries the full multipath
/// channel used for rate evaluation; `los_h` is the line-of-sight component
/// that beamforming design reconstructs from sensing results. Columns are
/// users. NLoS ray parameters are kept for diagnostics (num_nlos rows).
struct ChannelSet {
  Eigen::MatrixXcd true_h;   // M x K
  Eigen::MatrixXcd los_h;    // M x K
  Eigen::MatrixXd nlos_angles;   // num_nlos x K, radians
  Eigen::MatrixXcd nlos_gains;   // num_nlos x K
};

/// One bistatic echo path: complex reflection coefficient (RCS amplitude,
/// two-hop pathloss, and a nuisance phase) plus its departure/arrival angles.
struct SensingLinkParams {
  std::complex<double> reflection;
  double azimuth = 0.0;     // arrival at the sensing array
  double elevation = 0.0;
  double bs_angle = 0.0;    // departure at the BS array
};

/// Draws the multipath user channels. Each channel is the large-scale factor
/// sqrt(rho0 * d^-alpha0) times the line-of-sight steering vector plus
/// num_nlos rays with power uniform in [-10, -5] dB, uniform phases, and
/// departure angles uniform in (-pi/2, pi/2).
ChannelSet synth_true_channel(const SceneConfig& scene, const GeometryLinks& geometry,
                              Rng& rng);

/// Line-of-sight channels rebuilt from estimated departure angles and BS
/// distances, one per user.
Eigen::MatrixXcd reconstruct_los_channel(const SceneConfig& scene,
                                         const std::vector<double>& bs_angles,
                                         const std::vector<double>& bs_distances);

/// Echo path parameters for VUE `index` (or the target when `index` < 0),
/// with the given nuisance reflection phase.
SensingLinkParams make_sensing_link(const SceneConfig& scene,
                                    const GeometryLinks& geometry, int index,
                                    double phase);

/// Rank-one bistatic link matrix: reflection * a(theta, phi) * b(psi)^H.
Eigen::MatrixXcd sensing_link_matrix(const SensingLinkParams& params,
                                     const UlaSpec& ula, const UpaSpec& upa);

/// Maximum-ratio transmission: w_k = sqrt(P/K) * h_k / |h_k|.
/// Throws ZeroChannel if a column of `channels` is numerically zero.
Eigen::MatrixXcd mrt_beamformer(const Eigen::MatrixXcd& channels, double power);

}  // namespace ssac
