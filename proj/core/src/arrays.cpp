#include "ssac/arrays.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace ssac {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

Eigen::VectorXcd phase_ramp(int n, double step) {
  Eigen::VectorXcd v(n);
  for (int m = 0; m < n; ++m) v(m) = std::polar(1.0, step * m);
  return v;
}

Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace

Eigen::VectorXcd ula_steering(const UlaSpec& spec, double angle) {
  const double step = 2.0 * std::numbers::pi * spec.spacing_ratio * std::sin(angle);
  return phase_ramp(spec.num_elements, step);
}

Eigen::VectorXcd ula_steering_derivative(const UlaSpec& spec, double angle) {
  const double factor = 2.0 * std::numbers::pi * spec.spacing_ratio * std::cos(angle);
  Eigen::VectorXcd b = ula_steering(spec, angle);
  for (int m = 0; m < spec.num_elements; ++m) b(m) *= kImag * (factor * m);
  return b;
}

Eigen::VectorXcd upa_steering(const UpaSpec& spec, double azimuth, double elevation) {
  const double two_pi_r = 2.0 * std::numbers::pi * spec.spacing_ratio;
  const Eigen::VectorXcd ah =
      phase_ramp(spec.n_h, two_pi_r * std::sin(azimuth) * std::sin(elevation));
  const Eigen::VectorXcd av = phase_ramp(spec.n_v, two_pi_r * std::cos(elevation));
  return kron(ah, av);
}

UpaDerivatives upa_steering_derivatives(const UpaSpec& spec, double azimuth,
                                        double elevation) {
  const double two_pi_r = 2.0 * std::numbers::pi * spec.spacing_ratio;
  Eigen::VectorXcd ah =
      phase_ramp(spec.n_h, two_pi_r * std::sin(azimuth) * std::sin(elevation));
  Eigen::VectorXcd av = phase_ramp(spec.n_v, two_pi_r * std::cos(elevation));

  Eigen::VectorXcd ah_daz = ah;
  const double az_factor = two_pi_r * std::cos(azimuth) * std::sin(elevation);
  for (int i = 0; i < spec.n_h; ++i) ah_daz(i) *= kImag * (az_factor * i);

  Eigen::VectorXcd ah_del = ah;
  const double el_factor_h = two_pi_r * std::sin(azimuth) * std::cos(elevation);
  for (int i = 0; i < spec.n_h; ++i) ah_del(i) *= kImag * (el_factor_h * i);

  Eigen::VectorXcd av_del = av;
  const double el_factor_v = -two_pi_r * std::sin(elevation);
  for (int k = 0; k < spec.n_v; ++k) av_del(k) *= kImag * (el_factor_v * k);

  UpaDerivatives d;
  d.d_azimuth = kron(ah_daz, av);
  d.d_elevation = kron(ah_del, av) + kron(ah, av_del);
  return d;
}

}  // namespace ssac
