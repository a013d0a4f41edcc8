#include "ssac/fim.hpp"

#include <array>

#include "ssac/errors.hpp"

namespace ssac {

XiBlocks build_xi_blocks(const TargetParams& target, const UlaSpec& ula,
                         const UpaSpec& upa) {
  const std::complex<double> j{0.0, 1.0};
  const Eigen::VectorXcd a = upa_steering(upa, target.azimuth, target.elevation);
  const UpaDerivatives da = upa_steering_derivatives(upa, target.azimuth, target.elevation);
  const Eigen::VectorXcd b = ula_steering(ula, target.bs_angle);
  const Eigen::VectorXcd db = ula_steering_derivative(ula, target.bs_angle);
  const std::complex<double> alpha = target.reflection;

  XiBlocks xi;
  xi.azimuth = alpha * da.d_azimuth * b.adjoint();
  xi.elevation = alpha * da.d_elevation * b.adjoint();
  xi.bs_angle = alpha * a * db.adjoint();
  xi.re_alpha = a * b.adjoint();
  xi.im_alpha = j * a * b.adjoint();
  return xi;
}

FimBundle fim(const TargetParams& target, const UlaSpec& ula, const UpaSpec& upa,
              const Eigen::MatrixXcd& covariance, double noise_power, int snapshots) {
  const double herm_err = (covariance - covariance.adjoint()).cwiseAbs().maxCoeff();
  const double scale = covariance.cwiseAbs().maxCoeff();
  if (herm_err > 1e-10 * std::max(scale, 1e-300))
    throw NonHermitianCovariance("transmit covariance must be Hermitian");

  FimBundle bundle;
  bundle.xi = build_xi_blocks(target, ula, upa);

  // Every block is an outer product x y^H, so each trace collapses to
  // (x_l^H x_q) (y_q^H covariance y_l).
  const std::complex<double> j{0.0, 1.0};
  const Eigen::VectorXcd a = upa_steering(upa, target.azimuth, target.elevation);
  const UpaDerivatives da = upa_steering_derivatives(upa, target.azimuth, target.elevation);
  const Eigen::VectorXcd b = ula_steering(ula, target.bs_angle);
  const Eigen::VectorXcd db = ula_steering_derivative(ula, target.bs_angle);
  const std::complex<double> alpha = target.reflection;

  std::array<Eigen::VectorXcd, 5> left = {alpha * da.d_azimuth, alpha * da.d_elevation,
                                          alpha * a, a, j * a};
  std::array<Eigen::VectorXcd, 5> right = {b, b, db, b, b};

  const double factor = 2.0 * snapshots / noise_power;
  for (int l = 0; l < 5; ++l) {
    const Eigen::VectorXcd cov_right_l = covariance * right[l];
    for (int q = 0; q < 5; ++q) {
      const std::complex<double> xx = left[l].dot(left[q]);   // x_l^H x_q
      const std::complex<double> yy = right[q].dot(cov_right_l);  // y_q^H R y_l
      bundle.fim(l, q) = factor * (xx * yy).real();
    }
  }
  bundle.fim = ((bundle.fim + bundle.fim.transpose()) / 2.0).eval();

  bundle.theta_block = bundle.fim.topLeftCorner<2, 2>();
  bundle.cross_block = bundle.fim.topRightCorner<2, 3>();
  bundle.psi_block = bundle.fim.bottomRightCorner<3, 3>();
  return bundle;
}

CrlbResult crlb(const Matrix5d& information) {
  FimBundle bundle;
  bundle.fim = information;
  bundle.theta_block = information.topLeftCorner<2, 2>();
  bundle.cross_block = information.topRightCorner<2, 3>();
  bundle.psi_block = information.bottomRightCorner<3, 3>();
  return crlb(bundle);
}

CrlbResult crlb(const FimBundle& bundle) {
  // Generalized Schur complement: a rank-deficient nuisance block (single
  // transmit beam) still yields a valid angle bound through the
  // pseudo-inverse, since the cross block lives in its range for any
  // positive semidefinite information matrix.
  const Eigen::Matrix3d psi = bundle.psi_block;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> psi_eig(psi);
  const double psi_max = psi_eig.eigenvalues().cwiseAbs().maxCoeff();
  Eigen::Vector3d inv_eigs = Eigen::Vector3d::Zero();
  for (int i = 0; i < 3; ++i)
    if (psi_eig.eigenvalues()(i) > 1e-12 * psi_max)
      inv_eigs(i) = 1.0 / psi_eig.eigenvalues()(i);
  const Eigen::Matrix3d psi_pinv = psi_eig.eigenvectors() * inv_eigs.asDiagonal() *
                                   psi_eig.eigenvectors().transpose();

  Eigen::Matrix2d schur =
      bundle.theta_block -
      bundle.cross_block * psi_pinv * bundle.cross_block.transpose();
  schur = ((schur + schur.transpose()) / 2.0).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(schur);
  const double lo = eig.eigenvalues()(0);
  const double hi = eig.eigenvalues()(1);
  if (!(lo > 0.0) || hi / lo > 1e12)
    throw SingularFim("angle information Schur complement is numerically singular");

  CrlbResult result;
  result.matrix = eig.eigenvectors() *
                  eig.eigenvalues().cwiseInverse().asDiagonal() *
                  eig.eigenvectors().transpose();
  result.trace = result.matrix.trace();
  return result;
}

}  // namespace ssac
