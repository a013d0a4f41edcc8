#pragma once

#include <Eigen/Dense>

namespace ssac {

/// Uniform linear transmit array.
struct UlaSpec {
  int num_elements = 1;
  double spacing_ratio = 0.5;  // element spacing over carrier wavelength
};

/// Uniform planar receive array, n_h horizontal by n_v vertical elements.
struct UpaSpec {
  int n_h = 1;
  int n_v = 1;
  double spacing_ratio = 0.5;

  int size() const { return n_h * n_v; }
};

/// b(psi): element m carries phase 2*pi*ratio*m*sin(psi), m = 0..M-1.
Eigen::VectorXcd ula_steering(const UlaSpec& spec, double angle);

/// db/dpsi, elementwise j*2*pi*ratio*m*cos(psi) times b(psi).
Eigen::VectorXcd ula_steering_derivative(const UlaSpec& spec, double angle);

/// a(theta, phi) = a_h(theta, phi) kron a_v(phi). Horizontal phase step is
/// 2*pi*ratio*sin(theta)*sin(phi), vertical phase step 2*pi*ratio*cos(phi);
/// element i*n_v + k equals a_h[i] * a_v[k].
Eigen::VectorXcd upa_steering(const UpaSpec& spec, double azimuth, double elevation);

struct UpaDerivatives {
  Eigen::VectorXcd d_azimuth;
  Eigen::VectorXcd d_elevation;
};

/// Analytic partials of the planar response. The azimuth derivative only
/// touches the horizontal factor; the elevation derivative is the product
/// rule across both Kronecker factors.
UpaDerivatives upa_steering_derivatives(const UpaSpec& spec, double azimuth,
                                        double elevation);

}  // namespace ssac
