#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "ssac/channel.hpp"
#include "ssac/fim.hpp"
#include "ssac/fp.hpp"
#include "ssac/scene.hpp"

namespace ssac {

/// One beamforming design instance. Design channels drive the optimizer
/// (reconstructed line-of-sight channels in the normal pipeline); evaluation
/// channels are the true ones and only enter reported rates.
struct PddProblem {
  Eigen::MatrixXcd design_channels;  // M x K
  Eigen::MatrixXcd eval_channels;    // M x K
  TargetParams target;
  UlaSpec ula;
  UpaSpec upa;
  std::vector<double> vue_bs_angles;  // departure angles used by init beams
  double noise_comm = 1.0;
  double noise_radar = 1.0;
  double power = 1.0;
  int snapshots = 1;
  double crlb_threshold = 1e-4;  // linear rad^2; infinity disables the bound
  int num_rf_chains = 0;         // only read by hybrid runs
};

/// Assembles a problem from a scene. `channels` supplies both the design and
/// evaluation sides; pass the true channels as `design` for perfect-CSI runs.
PddProblem make_pdd_problem(const SceneConfig& scene, const GeometryLinks& geometry,
                            const Eigen::MatrixXcd& design_channels,
                            const Eigen::MatrixXcd& eval_channels,
                            double target_reflection_phase = 0.0);

struct PddConfig {
  double penalty_decay = 0.8;      // multiplies rho1 (and rho2) on slow progress
  double violation_switch = 0.0;   // dual-step threshold; 0 = adapt from first value
  double violation_tol = 1e-5;     // outer stop on the normalized violation
  double rate_tol = 1e-5;          // outer stop on relative rate change
  int max_outer = 100;
  int max_inner = 50;
  double inner_tol = 1e-6;         // relative AL change per inner cycle
  int max_ascent_steps = 80;       // beamformer gradient steps per cycle
  int max_backtracks = 40;
  double armijo_slope = 1e-4;
  double armijo_shrink = 0.5;
  double crlb_margin = 0.005;      // internal tightening of the threshold
  double init_mu_step = 0.02;
  int analog_steps = 40;           // manifold steps per hybrid cycle
  int digital_steps = 40;          // digital gradient steps per hybrid cycle
  bool record_trace = true;
};

/// Normalized quadratic model of the Fisher constraint. Physically the
/// information matrix spans many orders of magnitude across parameters, so
/// the optimizer works on a preconditioned copy: reflection rows are scaled
/// by |alpha| (a reparametrization that leaves the angle CRLB untouched) and
/// the whole matrix is divided by its largest entry at the reference
/// beamformer. All couplings, thresholds, and violations inside the
/// optimizer live in this normalized space.
class PenaltyModel {
 public:
  PenaltyModel() = default;
  PenaltyModel(const TargetParams& target, const UlaSpec& ula, const UpaSpec& upa,
               double noise_radar, int snapshots, const Eigen::MatrixXcd& w_ref);

  using Couplings = Eigen::Matrix<std::complex<double>, 5, 5>;

  /// tr(A_lq W W^H) for all 25 pairs, in normalized units.
  Couplings couplings(const Eigen::MatrixXcd& w) const;

  /// Normalized Fisher information: real part of the couplings.
  Matrix5d info(const Eigen::MatrixXcd& w) const;

  /// |info(W) - f_tilde|_F^2: the squared constraint gap of the real
  /// information matrix.
  double penalty_value(const Couplings& c, const Matrix5d& f_tilde) const;

  /// sum_lq r_lq (A_lq W + A_lq^H W) with r = Re(couplings) - f_tilde; the
  /// beamformer ascent subtracts this divided by rho1.
  Eigen::MatrixXcd penalty_gradient(const Eigen::MatrixXcd& w, const Couplings& c,
                                    const Matrix5d& f_tilde) const;

  /// Normalizer of the information matrix: the physical peak entry at the
  /// reference beamformer. Normalized CRLB traces are physical ones times
  /// this factor.
  double scale() const { return scale_; }
  /// Physical threshold (rad^2) converted to the normalized space.
  double scaled_threshold(double physical) const { return physical * scale_; }

  const std::array<Eigen::VectorXcd, 5>& right_factors() const { return y_; }
  const Couplings& coefficients() const { return kappa_; }

 private:
  std::array<Eigen::VectorXcd, 5> y_;  // right rank-one factors of A_lq
  Couplings kappa_ = Couplings::Zero();
  double scale_ = 1.0;
};

/// Physical constraint coupling matrices A_lq = (2L/noise) Xi_l^H Xi_q,
/// row-major in l, q. Re tr(A_lq W W^H) reproduces the Fisher entries.
std::array<Eigen::MatrixXcd, 25> penalty_coefficients(const TargetParams& target,
                                                      const UlaSpec& ula,
                                                      const UpaSpec& upa,
                                                      double noise_radar,
                                                      int snapshots);

/// Fractional-programming context shared by every beamformer update: scaled
/// effective channels and the diagonal weights of the linear term.
struct FpContext {
  Eigen::MatrixXcd h_eff;      // M x K, sqrt(log2 e) * beta_k h_k columns
  Eigen::VectorXd lin_weight;  // K, sqrt(log2 e) * 2 sqrt(1 + nu_k)

  static FpContext build(const Eigen::MatrixXcd& channels, const FpState& fp);

  /// Concave part: Re tr(diag(lin) h_eff^H W) - |h_eff^H W|_F^2.
  double value(const Eigen::MatrixXcd& w) const;
  /// Conjugate gradient of the concave part.
  Eigen::MatrixXcd gradient(const Eigen::MatrixXcd& w) const;
};

/// Ascent objective of the beamformer subproblem:
/// fp.value(W) - penalty_value / (2 rho1).
double ascent_objective(const Eigen::MatrixXcd& w, const FpContext& fp,
                        const PenaltyModel& model, const Matrix5d& f_tilde,
                        double rho1);

/// Conjugate gradient of ascent_objective.
Eigen::MatrixXcd grad_w(const Eigen::MatrixXcd& w, const FpContext& fp,
                        const PenaltyModel& model, const Matrix5d& f_tilde,
                        double rho1);

/// Scales W onto the power ball when it exceeds the budget; identity inside.
Eigen::MatrixXcd project_power(const Eigen::MatrixXcd& w, double power);

/// Per-user steering beams blended toward the target direction with weight
/// mu, normalized to the full power budget.
Eigen::MatrixXcd blend_beamformer(const PddProblem& problem, double mu);

/// Normalization anchor of the penalty model: the mu = 0 blend.
Eigen::MatrixXcd reference_beamformer(const PddProblem& problem);

struct InitResult {
  Eigen::MatrixXcd w;
  double rho1 = 1.0;
  double mu = 0.0;
};

/// Heuristic start: per-user beams blended toward the target direction, the
/// blend weight swept from 0 until the CRLB threshold holds; rho1 balances
/// the initial penalty against the initial surrogate rate.
/// Throws InfeasibleThreshold when even a pure target beam misses the bound.
InitResult init_beamformer(const PddProblem& problem, const PenaltyModel& model,
                           const PddConfig& cfg);

/// Optimizer state across inner cycles and outer updates.
struct PddState {
  Eigen::MatrixXcd w;
  FpState fp;
  Eigen::Matrix2d omega = Eigen::Matrix2d::Zero();
  Matrix5d f_xi = Matrix5d::Zero();
  Matrix5d z = Matrix5d::Zero();
  double rho1 = 1.0;
  bool sdp_feasible = false;   // an accepted (omega, f_xi) pair exists
  double al_value = 0.0;
  double prev_violation = 0.0;
  int outer_iter = 0;
  int monotonicity_violations = 0;
};

struct PddTraceRow {
  int outer = 0;
  double al = 0.0;
  double rate = 0.0;         // bits/s/Hz on evaluation channels
  double violation = 0.0;    // normalized max-abs constraint gap
  double trace_crlb = 0.0;   // physical rad^2
  double rho1 = 0.0;
  double rho2 = 0.0;         // hybrid runs only
};

struct PddResult {
  Eigen::MatrixXcd w;          // effective beamformer
  double rate = 0.0;           // on evaluation channels
  double trace_crlb = 0.0;     // physical rad^2
  double violation = 0.0;
  bool converged = false;
  bool feasibility_restored = false;
  int outer_iterations = 0;
  int monotonicity_violations = 0;
  std::vector<PddTraceRow> trace;
};

/// Abstract beamformer block: digital and hybrid arrays plug their own
/// ascent into the shared penalty loop.
class BeamformerUpdater {
 public:
  virtual ~BeamformerUpdater() = default;
  /// Maximize the ascent objective over the architecture's feasible set,
  /// starting from the current iterate.
  virtual void ascend(const FpContext& fp, const PenaltyModel& model,
                      const Matrix5d& f_tilde, double rho1, const PddConfig& cfg) = 0;
  virtual Eigen::MatrixXcd effective_w() const = 0;
  virtual double rho2() const { return 0.0; }
};

/// Runs inner cycles until the augmented objective stalls. Returns the last
/// augmented-objective value; increments state.monotonicity_violations if a
/// cycle decreased it beyond roundoff.
void inner_loop(PddState& state, const PddProblem& problem, const PenaltyModel& model,
                BeamformerUpdater& updater, const PddConfig& cfg);

/// Dual or penalty step from the converged inner state. Returns the
/// normalized constraint violation that drove the choice.
double outer_update(PddState& state, const PenaltyModel& model, const PddConfig& cfg);

/// Shared double-loop driver: alternates inner_loop and outer_update until
/// the violation and the rate settle or the outer budget runs out. Front
/// ends add their own feasibility restoration afterwards.
PddResult run_pdd_loop(const PddProblem& problem, const PenaltyModel& model,
                       const InitResult& init, BeamformerUpdater& updater,
                       const PddConfig& cfg);

/// Trace of the physical angle CRLB (rad^2) under beamformer `w`; +inf when
/// the target is unobservable.
double trace_crlb_physical(const PddProblem& problem, const Eigen::MatrixXcd& w);

/// Full double-loop design for the fully digital array.
PddResult optimize_digital(const PddProblem& problem, const PddConfig& cfg = {});

}  // namespace ssac
