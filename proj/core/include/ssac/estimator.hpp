#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ssac/channel.hpp"
#include "ssac/fim.hpp"
#include "ssac/rng.hpp"
#include "ssac/scene.hpp"
#include "ssac/units.hpp"

namespace ssac {

/// One synthesized sensing frame: the received snapshot block, the known
/// transmitted block, and the ground truth that generated it.
struct EchoFrame {
  Eigen::MatrixXcd received;     // N x L
  Eigen::MatrixXcd transmitted;  // M x L
  UlaSpec ula;
  UpaSpec upa;
  TargetParams target_truth;
  std::vector<SensingLinkParams> vue_truth;
  double noise_power = 0.0;
};

struct AngleEstimate {
  double azimuth = 0.0;
  double elevation = 0.0;
};

struct EstimatorConfig {
  double coarse_step = deg_to_rad(1.0);
  int refine_rounds = 3;
  int refine_factor = 10;
  double assumed_bs_angle = 0.0;  // departure angle fixed during the search
};

/// Draws unit-power Gaussian symbols through the beamformer, adds the VUE
/// and target echoes and white noise. Reflection phases are redrawn per
/// frame. Deterministic under a fixed rng state.
EchoFrame synth_echo(const SceneConfig& scene, const GeometryLinks& geometry,
                     const Eigen::MatrixXcd& w, Rng& rng);

/// Orthogonal projector onto the complement of the VUE steering directions.
/// Identity when `vue_angles` is empty. Throws RankDeficiency when the
/// steering vectors are numerically dependent.
Eigen::MatrixXcd vue_null_filter(const UpaSpec& upa,
                                 const std::vector<AngleEstimate>& vue_angles);

/// Reduced-dimension maximum-likelihood search: coarse grid over the two
/// arrival angles followed by local refinement, the departure angle held at
/// its assumed value. `filter` is applied to the received block first.
/// Throws GridExhausted when the objective carries no mass.
AngleEstimate rd_mle(const EchoFrame& frame, const Eigen::MatrixXcd& filter,
                     const EstimatorConfig& cfg);

/// Least-squares reflection coefficient at the given angles.
/// Throws ZeroSteering when the matched filter is numerically zero.
std::complex<double> estimate_alpha(const EchoFrame& frame, double azimuth,
                                    double elevation, double bs_angle);

/// Subspace spectrum search over the sample covariance of the received
/// block; returns the strongest `num_sources` peaks, refined locally.
/// Throws CovarianceRankDeficient when the signal subspace cannot support
/// the requested source count.
std::vector<AngleEstimate> music_2d(const EchoFrame& frame, int num_sources,
                                    const EstimatorConfig& cfg);

}  // namespace ssac
