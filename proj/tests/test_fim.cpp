#include "ssac/fim.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

#include "ssac/errors.hpp"
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

// Mean of the noise-free observation as a function of the parameter vector,
// stacked as vec(alpha a(az, el) b(psi)^H W).
Eigen::VectorXcd model_mean(const Eigen::Matrix<double, 5, 1>& xi, const UlaSpec& ula,
                            const UpaSpec& upa, const Eigen::MatrixXcd& w) {
  const cd alpha{xi(3), xi(4)};
  const Eigen::MatrixXcd outer =
      alpha * upa_steering(upa, xi(0), xi(1)) * ula_steering(ula, xi(2)).adjoint() * w;
  return Eigen::Map<const Eigen::VectorXcd>(outer.data(), outer.size());
}

}  // namespace

TEST_CASE("jacobian blocks: structure") {
  const UlaSpec ula{4, 0.5};
  const UpaSpec upa{2, 2, 0.5};
  TargetParams target{0.5, 1.1, -0.3, {0.7, 0.4}};

  const XiBlocks xi = build_xi_blocks(target, ula, upa);
  CHECK((xi.im_alpha - cd{0.0, 1.0} * xi.re_alpha).norm() == 0.0);
  for (int b = 0; b < 5; ++b) {
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(xi[b]);
    CHECK(svd.singularValues()(1) <= 1e-12 * svd.singularValues()(0));
  }

  target.reflection = 0.0;
  const XiBlocks zero = build_xi_blocks(target, ula, upa);
  CHECK(zero.azimuth.norm() == 0.0);
  CHECK(zero.elevation.norm() == 0.0);
  CHECK(zero.bs_angle.norm() == 0.0);
  CHECK(zero.re_alpha.norm() > 0.0);
}

TEST_CASE("information matrix: zero covariance, linearity, symmetry") {
  const UlaSpec ula{4, 0.5};
  const UpaSpec upa{2, 2, 0.5};
  const TargetParams target{0.4, 1.3, 0.2, {0.9, -0.2}};
  Rng rng(3);

  const Eigen::MatrixXcd w1 = random_complex(rng, 4, 2);
  const Eigen::MatrixXcd w2 = random_complex(rng, 4, 2);
  const Eigen::MatrixXcd r1 = w1 * w1.adjoint();
  const Eigen::MatrixXcd r2 = w2 * w2.adjoint();

  CHECK(fim(target, ula, upa, Eigen::MatrixXcd::Zero(4, 4), 0.5, 8).fim.norm() == 0.0);

  const Matrix5d j1 = fim(target, ula, upa, r1, 0.5, 8).fim;
  const Matrix5d j2 = fim(target, ula, upa, r2, 0.5, 8).fim;
  const Matrix5d j12 = fim(target, ula, upa, r1 + r2, 0.5, 8).fim;
  CHECK((j12 - j1 - j2).cwiseAbs().maxCoeff() < 1e-9 * j12.cwiseAbs().maxCoeff());
  CHECK((fim(target, ula, upa, 3.0 * r1, 0.5, 8).fim - 3.0 * j1).cwiseAbs().maxCoeff() <
        1e-9 * j1.cwiseAbs().maxCoeff());

  CHECK((j1 - j1.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * j1.cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<Matrix5d> eig(j1);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10 * j1.norm());

  Eigen::MatrixXcd bad = r1;
  bad(0, 1) += cd{0.0, 0.5};
  CHECK_THROWS_AS(fim(target, ula, upa, bad, 0.5, 8), NonHermitianCovariance);
}

TEST_CASE("information matrix matches the curvature of the expected log-likelihood") {
  const UlaSpec ula{4, 0.5};
  const UpaSpec upa{2, 2, 0.5};
  const int snapshots = 8;
  const double noise = 0.7;
  Rng rng(17);

  for (int trial = 0; trial < 5; ++trial) {
    Eigen::Matrix<double, 5, 1> xi;
    xi << rng.uniform(-1.0, 1.0), rng.uniform(0.4, 2.6), rng.uniform(-1.0, 1.0),
        rng.uniform(0.4, 1.2), rng.uniform(-0.8, 0.8);
    const TargetParams target{xi(0), xi(1), xi(2), {xi(3), xi(4)}};
    const Eigen::MatrixXcd w = random_complex(rng, 4, 2);

    const Matrix5d j =
        fim(target, ula, upa, w * w.adjoint(), noise, snapshots).fim;

    // Second differences of (L / noise) |m(xi) - m(xi0)|^2 at xi0.
    const Eigen::VectorXcd m0 = model_mean(xi, ula, upa, w);
    const auto nll = [&](const Eigen::Matrix<double, 5, 1>& p) {
      return snapshots / noise * (model_mean(p, ula, upa, w) - m0).squaredNorm();
    };
    Eigen::Matrix<double, 5, 1> h;
    h << 1e-4, 1e-4, 1e-4, 1e-4, 1e-4;

    Matrix5d fd = Matrix5d::Zero();
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) {
        Eigen::Matrix<double, 5, 1> p = xi;
        if (a == b) {
          p(a) = xi(a) + h(a);
          const double fp = nll(p);
          p(a) = xi(a) - h(a);
          const double fm = nll(p);
          fd(a, b) = (fp + fm) / (h(a) * h(a));  // f(xi0) = 0
        } else {
          p = xi;
          p(a) += h(a);
          p(b) += h(b);
          const double fpp = nll(p);
          p = xi;
          p(a) += h(a);
          p(b) -= h(b);
          const double fpm = nll(p);
          p = xi;
          p(a) -= h(a);
          p(b) += h(b);
          const double fmp = nll(p);
          p = xi;
          p(a) -= h(a);
          p(b) -= h(b);
          const double fmm = nll(p);
          fd(a, b) = (fpp - fpm - fmp + fmm) / (4.0 * h(a) * h(b));
        }
      }

    CHECK((fd - j).norm() <= 1e-4 * j.norm());
  }
}

TEST_CASE("bound: scaling, nuisance cost, block-inverse identity") {
  const UlaSpec ula{6, 0.5};
  const UpaSpec upa{3, 2, 0.5};
  const TargetParams target{0.3, 1.0, -0.4, {1.1, 0.5}};
  Rng rng(23);
  const Eigen::MatrixXcd w = random_complex(rng, 6, 3);
  const FimBundle bundle = fim(target, ula, upa, w * w.adjoint(), 0.5, 4);

  const CrlbResult base = crlb(bundle);
  const CrlbResult scaled = crlb(Matrix5d(4.0 * bundle.fim));
  CHECK(scaled.trace == doctest::Approx(base.trace / 4.0).epsilon(1e-9));

  // marginalizing nuisance parameters can only inflate the bound
  const Eigen::Matrix2d direct = bundle.theta_block.inverse();
  CHECK(base.matrix(0, 0) >= direct(0, 0) * (1.0 - 1e-12));
  CHECK(base.matrix(1, 1) >= direct(1, 1) * (1.0 - 1e-12));

  // block of the full inverse
  const Matrix5d inv = bundle.fim.inverse();
  CHECK((inv.topLeftCorner<2, 2>() - base.matrix).norm() <= 1e-8 * base.matrix.norm());
  CHECK(base.trace ==
        doctest::Approx(inv(0, 0) + inv(1, 1)).epsilon(1e-8));
}

TEST_CASE("steering the only beam at the target minimizes the bound") {
  const UlaSpec ula{8, 0.5};
  const UpaSpec upa{2, 2, 0.5};
  const TargetParams target{0.25, 1.2, 0.15, {0.8, 0.3}};
  const double power = 2.0;

  const Eigen::VectorXcd focused =
      std::sqrt(power / 8.0) * ula_steering(ula, target.bs_angle);
  const double best =
      crlb(fim(target, ula, upa, focused * focused.adjoint(), 0.5, 4)).trace;

  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXcd w = random_complex(rng, 8, 1);
    w *= std::sqrt(power) / w.norm();
    double trace = std::numeric_limits<double>::infinity();
    try {
      trace = crlb(fim(target, ula, upa, w * w.adjoint(), 0.5, 4)).trace;
    } catch (const SingularFim&) {
    }
    CHECK(trace >= best * (1.0 - 1e-9));
  }
}

TEST_CASE("unlit target raises SingularFim") {
  const UlaSpec ula{6, 0.5};
  const UpaSpec upa{2, 2, 0.5};
  const TargetParams target{0.3, 1.0, 0.2, {1.0, 0.0}};

  // beam orthogonal to the target departure vector
  const Eigen::VectorXcd b = ula_steering(ula, target.bs_angle);
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(6);
  w(0) = 1.0;
  w -= b * (b.dot(w) / b.squaredNorm());
  const Eigen::MatrixXcd r = w * w.adjoint();
  CHECK_THROWS_AS(crlb(fim(target, ula, upa, r, 0.5, 4)), SingularFim);
}
