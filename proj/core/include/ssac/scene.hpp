#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ssac/units.hpp"

namespace ssac {

/// Geometry, radio, and power parameters of one scenario: a multi-antenna
/// base station serving K single-antenna users while a passive planar-array
/// node listens to the echoes of the downlink waveform.
///
/// Conventions (also enforced by the shipped configs):
///  - the BS transmit array is a uniform linear array along world x with
///    broadside +y; users and the target must sit at y > bs y,
///  - the receive array angles (azimuth, elevation) follow the planar-array
///    phase model used throughout, with the displacement sensor - node; range
///    recovery from angles requires node y <= sensor y,
///  - all angles are radians internally, all powers are watts internally;
///    config files use degrees / dBm / dB.
struct SceneConfig {
  Eigen::Vector3d bs_position{0.0, 0.0, 10.0};
  Eigen::Vector3d sensor_position{0.0, 20.0, 8.0};
  std::vector<Eigen::Vector3d> vue_positions;
  Eigen::Vector3d target_position{5.0, 10.0, 1.0};

  int num_tx_antennas = 16;        // M
  int upa_rows = 4;                // N_h (horizontal)
  int upa_cols = 4;                // N_v (vertical)
  int num_rf_chains = 2;           // N_rf, only used for hybrid arrays
  double spacing_ratio = 0.5;      // element spacing over carrier wavelength

  double power_budget_dbm = 30.0;  // P
  double noise_comm_dbm = -80.0;   // sigma_c^2
  double noise_radar_dbm = -80.0;  // sigma_r^2
  double rcs_vue_dbsm = 20.0;      // zeta_k
  double rcs_target_dbsm = 0.0;    // zeta_t
  double ref_gain_db = -50.0;      // rho_0, channel gain at 1 m
  double pathloss_exp = 2.0;       // alpha_0
  int num_nlos = 3;                // NLoS rays per user channel
  int snapshots = 100;             // L, symbols per sensing frame
  double crlb_threshold_db = -40.0;  // eta_0, dB of rad^2
  std::uint64_t rng_seed = 1;

  int num_vues() const { return static_cast<int>(vue_positions.size()); }
  int upa_size() const { return upa_rows * upa_cols; }

  double power_w() const { return dbm_to_watt(power_budget_dbm); }
  double noise_comm_w() const { return dbm_to_watt(noise_comm_dbm); }
  double noise_radar_w() const { return dbm_to_watt(noise_radar_dbm); }
  double rcs_vue() const { return db_to_linear(rcs_vue_dbsm); }
  double rcs_target() const { return db_to_linear(rcs_target_dbsm); }
  double ref_gain() const { return db_to_linear(ref_gain_db); }
  double crlb_threshold() const { return db_to_linear(crlb_threshold_db); }

  /// Throws ConfigError when an invariant is violated (K >= 1, M >= K,
  /// K <= N_rf <= M, positive counts, finite positions).
  void validate() const;
};

/// Distances and angles of one BS-node-sensor link.
struct LinkGeometry {
  double bs_distance = 0.0;      // meters, BS to node
  double bs_angle = 0.0;         // radians, departure angle at the BS array
  double sensor_distance = 0.0;  // meters, node to sensing array
  double azimuth = 0.0;          // radians, arrival azimuth at the sensing array
  double elevation = 0.0;        // radians, arrival elevation at the sensing array
};

struct GeometryLinks {
  std::vector<LinkGeometry> vues;
  LinkGeometry target;
};

/// Derives every link quantity from Cartesian positions.
/// Throws CoincidentNodes when a node sits on the BS or the sensor.
GeometryLinks compute_geometry(const SceneConfig& scene);

/// Recovers a node position from its arrival angles at the sensing array,
/// given the known height difference d_h = sensor z - node z. The slant range
/// is d_h / cos(elevation); the horizontal offsets follow from the azimuth.
/// Throws DegenerateElevation when |cos(elevation)| < 1e-9 and
/// NegativeRadicand when the angles are inconsistent with d_h.
Eigen::Vector3d localize_from_aoa(double azimuth, double elevation,
                                  const Eigen::Vector3d& sensor_position,
                                  double height_diff);

}  // namespace ssac
