#pragma once

#include <Eigen/Dense>

#include "ssac/pdd.hpp"

namespace ssac {

enum class Architecture { kFullyConnected, kPartiallyConnected };

/// Hybrid beamformer: analog phase network times a small digital matrix.
/// Fully connected: every analog entry unit modulus. Partially connected:
/// block diagonal with N_p = M / N_rf unit-modulus entries per RF chain and
/// exact zeros off the support.
struct HadBeamformer {
  Architecture architecture = Architecture::kFullyConnected;
  Eigen::MatrixXcd analog;   // M x N_rf
  Eigen::MatrixXcd digital;  // N_rf x K

  Eigen::MatrixXcd effective() const { return analog * digital; }
  int subarray_size() const {
    return static_cast<int>(analog.rows() / analog.cols());
  }
};

/// Gradient of the ascent objective with respect to the digital matrix at
/// fixed analog network (chain rule through W = F_a F_d).
Eigen::MatrixXcd grad_fd(const Eigen::MatrixXcd& fa, const Eigen::MatrixXcd& fd,
                         const FpContext& fp, const PenaltyModel& model,
                         const Matrix5d& f_tilde, double rho1);

/// Scales the digital matrix so the effective beamformer meets the power
/// budget; identity when already feasible.
Eigen::MatrixXcd project_fd(const Eigen::MatrixXcd& fa, const Eigen::MatrixXcd& fd,
                            double power);

/// Squared hinge of the power overshoot: ([|F_a F_d|_F^2 - P]^+)^2.
double power_penalty(const Eigen::MatrixXcd& fa, const Eigen::MatrixXcd& fd,
                     double power);

/// Euclidean gradient of the fully-connected analog objective, including the
/// power-penalty pull-back weighted by 1/rho2.
Eigen::MatrixXcd grad_fa_fc(const Eigen::MatrixXcd& fa, const Eigen::MatrixXcd& fd,
                            const FpContext& fp, const PenaltyModel& model,
                            const Matrix5d& f_tilde, double rho1, double rho2,
                            double power);

/// Projects a Euclidean gradient onto the tangent space of the unit-modulus
/// manifold at `fa`: V - Re(V . conj(fa)) . fa elementwise.
Eigen::MatrixXcd tangent_project(const Eigen::MatrixXcd& fa,
                                 const Eigen::MatrixXcd& euclidean);

/// Elementwise retraction back to unit modulus. Entries whose update lands
/// within 1e-14 of the origin keep their previous phase.
Eigen::MatrixXcd retract_unit_modulus(const Eigen::MatrixXcd& previous,
                                      const Eigen::MatrixXcd& updated);

/// One line-searched Riemannian ascent step of the fully-connected analog
/// stage. Accepted iterates are re-projected to the power ball through the
/// digital matrix, so the returned pair never violates the budget.
/// `step_hint` carries the line-search warm start across calls.
void riemannian_step_fc(Eigen::MatrixXcd& fa, Eigen::MatrixXcd& fd,
                        const FpContext& fp, const PenaltyModel& model,
                        const Matrix5d& f_tilde, double rho1, double rho2,
                        double power, double& step_hint, const PddConfig& cfg);

/// Diagonal of D_k = diag(d_k kron 1_Np): the M x M diagonal matrix with
/// F_a d_k = D_k p for the stacked phase vector p.
Eigen::VectorXcd dk_transform(const Eigen::VectorXcd& dk, int np);

/// Block-diagonal analog matrix assembled from the stacked phase vector.
Eigen::MatrixXcd analog_from_phases(const Eigen::VectorXcd& p, int n_rf);

/// Euclidean gradient of the partially-connected analog objective in the
/// stacked phase vector.
Eigen::VectorXcd grad_p_pc(const Eigen::VectorXcd& p, const Eigen::MatrixXcd& fd,
                           const FpContext& fp, const PenaltyModel& model,
                           const Matrix5d& f_tilde, double rho1);

/// One line-searched Riemannian ascent step of the partially-connected
/// analog stage; the power budget is untouched by construction.
void riemannian_step_pc(Eigen::VectorXcd& p, const Eigen::MatrixXcd& fd,
                        const FpContext& fp, const PenaltyModel& model,
                        const Matrix5d& f_tilde, double rho1, double& step_hint,
                        const PddConfig& cfg);

struct HadAscentReport {
  double objective = 0.0;
  int rounds = 0;
};

/// Alternating digital/analog ascent of the hybrid beamformer under a fixed
/// surrogate context: the beamformer update embedded into the penalty loop.
/// rho2 decays by cfg.penalty_decay after each fully-connected analog phase.
HadAscentReport optimize_had(HadBeamformer& beamformer, const FpContext& fp,
                             const PenaltyModel& model, const Matrix5d& f_tilde,
                             double rho1, double& rho2, double power,
                             const PddConfig& cfg);

/// Alternating least-squares split of a digital beamformer into analog and
/// digital factors; the conventional decomposition baseline. The result is
/// rescaled to the exact power of `w`. Fully-connected splits with
/// N_rf >= 2K start from an exact phase-splitting construction.
HadBeamformer decompose_baseline(const Eigen::MatrixXcd& w, int n_rf,
                                 Architecture architecture, double power,
                                 int rounds = 50);

struct HadResult {
  PddResult base;
  HadBeamformer beamformer;
};

/// Full double-loop design for a hybrid array.
HadResult optimize_hybrid(const PddProblem& problem, Architecture architecture,
                          const PddConfig& cfg = {});

}  // namespace ssac
