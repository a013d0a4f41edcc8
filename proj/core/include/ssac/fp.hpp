#pragma once

#include <Eigen/Dense>

namespace ssac {

/// Auxiliary variables of the sum-rate surrogate: nu reproduces the per-user
/// SINR, beta is the quadratic-transform multiplier.
struct FpState {
  Eigen::VectorXd nu;
  Eigen::VectorXcd beta;
};

struct RateReport {
  Eigen::VectorXd sinr;
  double sum_rate = 0.0;  // bits/s/Hz
};

/// Per-user SINR and the achievable sum rate sum_k log2(1 + sinr_k).
RateReport sinr_and_rate(const Eigen::MatrixXcd& channels, const Eigen::MatrixXcd& w,
                         double noise_power);

/// Closed-form update: nu_k equals the SINR of user k.
Eigen::VectorXd update_nu(const Eigen::MatrixXcd& channels, const Eigen::MatrixXcd& w,
                          double noise_power);

/// Closed-form update:
/// beta_k = sqrt(1 + nu_k) h_k^H w_k / (sum_i |h_k^H w_i|^2 + noise_power).
Eigen::VectorXcd update_beta(const Eigen::MatrixXcd& channels, const Eigen::MatrixXcd& w,
                             const Eigen::VectorXd& nu, double noise_power);

/// Concave-in-W surrogate of the sum rate, in bits. Equal to the sum rate
/// when nu and beta sit at their closed-form optima, and jointly maximized
/// there, so alternating (nu, beta) and W updates never decrease it.
double r_sum(const FpState& state, const Eigen::MatrixXcd& channels,
             const Eigen::MatrixXcd& w, double noise_power);

}  // namespace ssac
