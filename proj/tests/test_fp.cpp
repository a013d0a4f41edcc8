#include "ssac/fp.hpp"

#include <doctest.h>

#include <cmath>

#include "ssac/rng.hpp"

using namespace ssac;
using cd = std::complex<double>;

namespace {

Eigen::MatrixXcd random_complex(Rng& rng, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  return m;
}

FpState fixed_point(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& w,
                    double noise) {
  FpState fp;
  fp.nu = update_nu(h, w, noise);
  fp.beta = update_beta(h, w, fp.nu, noise);
  return fp;
}

}  // namespace

TEST_CASE("single-user rate closed form") {
  Eigen::MatrixXcd h(1, 1), w(1, 1);
  h(0, 0) = 1.0;
  w(0, 0) = 1.0;  // |h^H w|^2 = 1
  const RateReport report = sinr_and_rate(h, w, 0.5);
  CHECK(report.sinr(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(report.sum_rate == doctest::Approx(std::log2(3.0)).epsilon(1e-14));

  CHECK(sinr_and_rate(h, Eigen::MatrixXcd::Zero(1, 1), 0.5).sum_rate == 0.0);
}

TEST_CASE("orthogonal channels with matched beams have no cross terms") {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(4, 2);
  h(0, 0) = 2.0;
  h(1, 1) = cd{0.0, 1.5};
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(4, 2);
  w.col(0) = 0.7 * h.col(0) / h.col(0).norm();
  w.col(1) = 1.3 * h.col(1) / h.col(1).norm();

  const double noise = 0.2;
  const RateReport report = sinr_and_rate(h, w, noise);
  CHECK(report.sinr(0) ==
        doctest::Approx(h.col(0).squaredNorm() * w.col(0).squaredNorm() / noise)
            .epsilon(1e-12));
  CHECK(report.sinr(1) ==
        doctest::Approx(h.col(1).squaredNorm() * w.col(1).squaredNorm() / noise)
            .epsilon(1e-12));
}

TEST_CASE("auxiliary updates: closed forms") {
  Eigen::MatrixXcd h(1, 1), w(1, 1);
  h(0, 0) = 1.0;
  w(0, 0) = 1.0;
  const double noise = 0.5;

  const Eigen::VectorXd nu = update_nu(h, w, noise);
  CHECK(nu(0) == doctest::Approx(2.0).epsilon(1e-14));

  Eigen::VectorXd nu_fixed(1);
  nu_fixed << 2.0;
  const Eigen::VectorXcd beta = update_beta(h, w, nu_fixed, noise);
  CHECK(std::abs(beta(0) - std::sqrt(3.0) / 1.5) < 1e-12);

  CHECK(update_nu(h, Eigen::MatrixXcd::Zero(1, 1), noise)(0) == 0.0);
  CHECK(std::abs(update_beta(h, Eigen::MatrixXcd::Zero(1, 1), nu_fixed, noise)(0)) ==
        0.0);
}

TEST_CASE("surrogate is zero at zeroed auxiliaries and tight at the fixed point") {
  Rng rng(5);
  const double noise = 0.3;
  for (int t = 0; t < 20; ++t) {
    const Eigen::MatrixXcd h = random_complex(rng, 6, 3);
    const Eigen::MatrixXcd w = random_complex(rng, 6, 3);

    FpState zero;
    zero.nu = Eigen::VectorXd::Zero(3);
    zero.beta = Eigen::VectorXcd::Zero(3);
    CHECK(r_sum(zero, h, w, noise) == 0.0);

    const FpState fp = fixed_point(h, w, noise);
    const double surrogate = r_sum(fp, h, w, noise);
    const double rate = sinr_and_rate(h, w, noise).sum_rate;
    CHECK(surrogate == doctest::Approx(rate).epsilon(1e-9));
  }
}

TEST_CASE("pair updates never decrease the surrogate") {
  Rng rng(8);
  const double noise = 0.4;
  for (int t = 0; t < 50; ++t) {
    const Eigen::MatrixXcd h = random_complex(rng, 5, 2);
    const Eigen::MatrixXcd w_old = random_complex(rng, 5, 2);
    const Eigen::MatrixXcd w_new = random_complex(rng, 5, 2);

    // auxiliaries tuned for w_old, then the beamformer moves
    const FpState stale = fixed_point(h, w_old, noise);
    const double before = r_sum(stale, h, w_new, noise);
    const FpState fresh = fixed_point(h, w_new, noise);
    const double after = r_sum(fresh, h, w_new, noise);
    CHECK(after >= before - 1e-10 * (1.0 + std::abs(before)));
  }
}

TEST_CASE("surrogate is concave in the beamformer") {
  Rng rng(13);
  const double noise = 0.25;
  for (int t = 0; t < 50; ++t) {
    const Eigen::MatrixXcd h = random_complex(rng, 4, 2);
    FpState fp;
    fp.nu = Eigen::VectorXd::Zero(2);
    fp.beta = Eigen::VectorXcd::Zero(2);
    fp.nu << rng.uniform(0.0, 5.0), rng.uniform(0.0, 5.0);
    fp.beta << rng.complex_normal(), rng.complex_normal();

    const Eigen::MatrixXcd w1 = random_complex(rng, 4, 2);
    const Eigen::MatrixXcd w2 = random_complex(rng, 4, 2);
    const double mid = r_sum(fp, h, (w1 + w2) / 2.0, noise);
    const double chord = 0.5 * (r_sum(fp, h, w1, noise) + r_sum(fp, h, w2, noise));
    CHECK(mid >= chord - 1e-10 * (1.0 + std::abs(chord)));
  }
}
