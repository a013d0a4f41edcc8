#pragma once

#include <Eigen/Dense>
#include <complex>

#include "ssac/arrays.hpp"

namespace ssac {

using Matrix5d = Eigen::Matrix<double, 5, 5>;

/// Unknowns of the weak-target echo: arrival azimuth/elevation at the sensing
/// array, departure angle at the BS, and the complex reflection coefficient.
/// The estimation parameter vector is [azimuth, elevation, bs_angle,
/// Re(reflection), Im(reflection)].
struct TargetParams {
  double azimuth = 0.0;
  double elevation = 0.0;
  double bs_angle = 0.0;
  std::complex<double> reflection{1.0, 0.0};
};

/// Jacobian blocks of the noise-free echo with respect to each unknown, one
/// N x M matrix per parameter.
struct XiBlocks {
  Eigen::MatrixXcd azimuth;
  Eigen::MatrixXcd elevation;
  Eigen::MatrixXcd bs_angle;
  Eigen::MatrixXcd re_alpha;
  Eigen::MatrixXcd im_alpha;

  const Eigen::MatrixXcd& operator[](int i) const {
    const Eigen::MatrixXcd* blocks[5] = {&azimuth, &elevation, &bs_angle, &re_alpha,
                                         &im_alpha};
    return *blocks[i];
  }
};

XiBlocks build_xi_blocks(const TargetParams& target, const UlaSpec& ula,
                         const UpaSpec& upa);

/// Fisher information of the five-parameter echo model, with the 2x2 angle
/// block and its nuisance partition.
struct FimBundle {
  XiBlocks xi;
  Matrix5d fim = Matrix5d::Zero();                          // rad^-2 on angle entries
  Eigen::Matrix2d theta_block = Eigen::Matrix2d::Zero();    // angles of interest
  Eigen::Matrix<double, 2, 3> cross_block = Eigen::Matrix<double, 2, 3>::Zero();
  Eigen::Matrix3d psi_block = Eigen::Matrix3d::Zero();      // nuisance parameters
};

/// Assembles the Fisher information for L snapshots with transmit covariance
/// `covariance` (= W W^H) and noise power `noise_power`. Entry (l, q) is
/// (2 L / noise_power) * Re tr(Xi_q covariance Xi_l^H).
/// Throws NonHermitianCovariance when `covariance` is not Hermitian.
FimBundle fim(const TargetParams& target, const UlaSpec& ula, const UpaSpec& upa,
              const Eigen::MatrixXcd& covariance, double noise_power, int snapshots);

struct CrlbResult {
  Eigen::Matrix2d matrix = Eigen::Matrix2d::Zero();  // rad^2
  double trace = 0.0;
};

/// Inverts the Schur complement of the angle block against the nuisance
/// block. Diagonal entries lower-bound the per-angle estimation MSE.
/// Throws SingularFim when the Schur complement condition number exceeds
/// 1e12 (target effectively unilluminated).
CrlbResult crlb(const FimBundle& bundle);

/// Same bound straight from a 5x5 information matrix.
CrlbResult crlb(const Matrix5d& information);

}  // namespace ssac
