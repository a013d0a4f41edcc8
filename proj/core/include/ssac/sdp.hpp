#pragma once

#include <Eigen/Dense>

#include "ssac/fim.hpp"

namespace ssac {

struct SdpSolution {
  Eigen::Matrix2d omega = Eigen::Matrix2d::Zero();
  Matrix5d f_xi = Matrix5d::Zero();
  double objective = 0.0;      // |F - (J + rho Z)|_F^2 at the solution
  double kkt_residual = 0.0;
  bool stalled = false;        // iteration cap hit; best iterate returned
};

/// Nearest-matrix subproblem of the penalty scheme:
///
///   minimize   |J + rho * Z - F|_F^2   over F, Omega
///   subject to tr(Omega^-1) <= threshold,
///              [[F_tt - Omega, F_tp], [F_tp^T, F_pp]] >= 0,
///              Omega >= 0,
///
/// where (tt, tp, pp) is the 2/3 partition of F. The trace-of-inverse
/// constraint is rewritten with an auxiliary symmetric U through the linear
/// matrix inequality [[Omega, I], [I, U]] >= 0, tr(U) <= threshold, and the
/// whole problem is solved with a log-barrier interior-point method over the
/// two semidefinite cones.
SdpSolution solve_sdp_subproblem(const Matrix5d& j_target, double threshold,
                                 double penalty, const Matrix5d& dual);

}  // namespace ssac
