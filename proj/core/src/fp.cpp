#include "ssac/fp.hpp"

#include <cmath>
#include <numbers>

namespace ssac {

namespace {

// log2 e: the surrogate is the natural-log objective expressed in bits, which
// keeps the closed-form nu/beta updates exact maximizers.
const double kBitsScale = 1.0 / std::numbers::ln2;

Eigen::MatrixXcd cross_gains(const Eigen::MatrixXcd& channels,
                             const Eigen::MatrixXcd& w) {
  return channels.adjoint() * w;  // (k, i) = h_k^H w_i
}

}  // namespace

RateReport sinr_and_rate(const Eigen::MatrixXcd& channels, const Eigen::MatrixXcd& w,
                         double noise_power) {
  const Eigen::MatrixXcd g = cross_gains(channels, w);
  const int k = static_cast<int>(g.rows());
  RateReport report;
  report.sinr.resize(k);
  for (int u = 0; u < k; ++u) {
    const double signal = std::norm(g(u, u));
    const double interference = g.row(u).squaredNorm() - signal;
    report.sinr(u) = signal / (interference + noise_power);
    report.sum_rate += std::log2(1.0 + report.sinr(u));
  }
  return report;
}

Eigen::VectorXd update_nu(const Eigen::MatrixXcd& channels, const Eigen::MatrixXcd& w,
                          double noise_power) {
  return sinr_and_rate(channels, w, noise_power).sinr;
}

Eigen::VectorXcd update_beta(const Eigen::MatrixXcd& channels, const Eigen::MatrixXcd& w,
                             const Eigen::VectorXd& nu, double noise_power) {
  const Eigen::MatrixXcd g = cross_gains(channels, w);
  const int k = static_cast<int>(g.rows());
  Eigen::VectorXcd beta(k);
  for (int u = 0; u < k; ++u) {
    const double total = g.row(u).squaredNorm() + noise_power;
    beta(u) = std::sqrt(1.0 + nu(u)) * g(u, u) / total;
  }
  return beta;
}

double r_sum(const FpState& state, const Eigen::MatrixXcd& channels,
             const Eigen::MatrixXcd& w, double noise_power) {
  const Eigen::MatrixXcd g = cross_gains(channels, w);
  const int k = static_cast<int>(g.rows());
  double value = 0.0;
  for (int u = 0; u < k; ++u) {
    const double nu = state.nu(u);
    const std::complex<double> beta = state.beta(u);
    value += std::log(1.0 + nu) - nu;
    value += 2.0 * std::sqrt(1.0 + nu) * (std::conj(beta) * g(u, u)).real();
    value -= std::norm(beta) * (g.row(u).squaredNorm() + noise_power);
  }
  return kBitsScale * value;
}

}  // namespace ssac
