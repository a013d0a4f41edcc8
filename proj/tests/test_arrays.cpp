#include "ssac/arrays.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "ssac/rng.hpp"

using namespace ssac;
using cd = std::complex<double>;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("linear array closed forms") {
  CHECK((ula_steering({5, 0.5}, 0.0) - Eigen::VectorXcd::Ones(5)).norm() < 1e-14);

  // phase step pi/2 at 30 degrees and half-wavelength spacing
  const Eigen::VectorXcd b = ula_steering({4, 0.5}, kPi / 6.0);
  const cd expect[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int m = 0; m < 4; ++m) CHECK(std::abs(b(m) - expect[m]) < 1e-12);

  const Eigen::VectorXcd b2 = ula_steering({2, 0.5}, kPi / 2.0);
  CHECK(std::abs(b2(0) - cd{1, 0}) < 1e-12);
  CHECK(std::abs(b2(1) - cd{-1, 0}) < 1e-12);
}

TEST_CASE("planar array closed forms") {
  const UpaSpec spec{3, 4, 0.5};

  // azimuth zero: horizontal factor collapses to ones
  const Eigen::VectorXcd a0 = upa_steering(spec, 0.0, 1.1);
  for (int i = 0; i < spec.n_h; ++i)
    for (int k = 0; k < spec.n_v; ++k)
      CHECK(std::abs(a0(i * spec.n_v + k) - a0(k)) < 1e-12);

  // elevation 90 degrees: vertical factor collapses to ones
  const Eigen::VectorXcd a1 = upa_steering(spec, 0.7, kPi / 2.0);
  for (int i = 0; i < spec.n_h; ++i)
    for (int k = 0; k < spec.n_v; ++k)
      CHECK(std::abs(a1(i * spec.n_v + k) - a1(i * spec.n_v)) < 1e-12);

  const Eigen::VectorXcd a2 = upa_steering({2, 2, 0.5}, kPi / 2.0, kPi / 2.0);
  CHECK(std::abs(a2(0) - cd{1, 0}) < 1e-12);
  CHECK(std::abs(a2(1) - cd{1, 0}) < 1e-12);
  CHECK(std::abs(a2(2) - cd{-1, 0}) < 1e-12);
  CHECK(std::abs(a2(3) - cd{-1, 0}) < 1e-12);
}

TEST_CASE("kronecker ordering is horizontal-major") {
  const UpaSpec spec{3, 5, 0.5};
  const double az = 0.43, el = 1.21;
  const Eigen::VectorXcd a = upa_steering(spec, az, el);
  const double step_h = 2.0 * kPi * 0.5 * std::sin(az) * std::sin(el);
  const double step_v = 2.0 * kPi * 0.5 * std::cos(el);
  for (int i = 0; i < spec.n_h; ++i)
    for (int k = 0; k < spec.n_v; ++k) {
      const cd expect = std::polar(1.0, step_h * i) * std::polar(1.0, step_v * k);
      CHECK(std::abs(a(i * spec.n_v + k) - expect) < 1e-12);
    }
}

TEST_CASE("unit modulus and norms") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const double psi = rng.uniform(-kPi / 2.0, kPi / 2.0);
    const Eigen::VectorXcd b = ula_steering({7, 0.5}, psi);
    for (int m = 0; m < 7; ++m) CHECK(std::abs(std::abs(b(m)) - 1.0) < 1e-15);
    CHECK(b.squaredNorm() == doctest::Approx(7.0).epsilon(1e-14));

    const UpaSpec spec{4, 3, 0.5};
    const Eigen::VectorXcd a =
        upa_steering(spec, rng.uniform(-kPi / 2.0, kPi / 2.0), rng.uniform(0.1, kPi - 0.1));
    for (int i = 0; i < spec.size(); ++i) CHECK(std::abs(std::abs(a(i)) - 1.0) < 1e-15);
    CHECK(a.squaredNorm() == doctest::Approx(12.0).epsilon(1e-14));
  }
}

TEST_CASE("derivative special values") {
  const Eigen::VectorXcd db = ula_steering_derivative({6, 0.5}, kPi / 2.0);
  CHECK(db.norm() < 1e-12);  // cos vanishes at endfire

  // index factor zero on the first element of every derivative
  CHECK(std::abs(ula_steering_derivative({5, 0.5}, 0.3)(0)) == 0.0);
  const UpaDerivatives d = upa_steering_derivatives({3, 3, 0.5}, 0.4, 1.0);
  CHECK(std::abs(d.d_azimuth(0)) == 0.0);
  CHECK(std::abs(d.d_elevation(0)) == 0.0);
}

TEST_CASE("derivatives match central finite differences") {
  Rng rng(11);
  const double h = 1e-6;
  const UlaSpec ula{6, 0.5};
  const UpaSpec upa{3, 4, 0.5};
  for (int t = 0; t < 100; ++t) {
    const double psi = rng.uniform(-1.4, 1.4);
    const Eigen::VectorXcd analytic = ula_steering_derivative(ula, psi);
    const Eigen::VectorXcd fd =
        (ula_steering(ula, psi + h) - ula_steering(ula, psi - h)) / (2.0 * h);
    CHECK((analytic - fd).norm() <= 1e-6 * std::max(fd.norm(), 1e-12));

    const double az = rng.uniform(-1.4, 1.4);
    const double el = rng.uniform(0.15, kPi - 0.15);
    const UpaDerivatives d = upa_steering_derivatives(upa, az, el);
    const Eigen::VectorXcd fd_az =
        (upa_steering(upa, az + h, el) - upa_steering(upa, az - h, el)) / (2.0 * h);
    const Eigen::VectorXcd fd_el =
        (upa_steering(upa, az, el + h) - upa_steering(upa, az, el - h)) / (2.0 * h);
    CHECK((d.d_azimuth - fd_az).norm() <= 1e-6 * std::max(fd_az.norm(), 1e-9));
    CHECK((d.d_elevation - fd_el).norm() <= 1e-6 * std::max(fd_el.norm(), 1e-9));
  }
}
