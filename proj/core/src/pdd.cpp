#include "ssac/pdd.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ssac/errors.hpp"
#include "ssac/sdp.hpp"

namespace ssac {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

// sqrt(log2 e): folded into the effective channels so the quadratic surrogate
// terms stay consistent with rates measured in bits.
const double kSqrtBitsScale = std::sqrt(1.0 / std::numbers::ln2);

struct XiFactors {
  std::array<Eigen::VectorXcd, 5> left;   // N-vectors
  std::array<Eigen::VectorXcd, 5> right;  // M-vectors
};

XiFactors xi_factors(const TargetParams& target, const UlaSpec& ula, const UpaSpec& upa) {
  const Eigen::VectorXcd a = upa_steering(upa, target.azimuth, target.elevation);
  const UpaDerivatives da = upa_steering_derivatives(upa, target.azimuth, target.elevation);
  const Eigen::VectorXcd b = ula_steering(ula, target.bs_angle);
  const Eigen::VectorXcd db = ula_steering_derivative(ula, target.bs_angle);
  const std::complex<double> alpha = target.reflection;
  XiFactors f;
  f.left = {alpha * da.d_azimuth, alpha * da.d_elevation, alpha * a, a, kImag * a};
  f.right = {b, b, db, b, b};
  return f;
}

}  // namespace

PddProblem make_pdd_problem(const SceneConfig& scene, const GeometryLinks& geometry,
                            const Eigen::MatrixXcd& design_channels,
                            const Eigen::MatrixXcd& eval_channels,
                            double target_reflection_phase) {
  PddProblem problem;
  problem.design_channels = design_channels;
  problem.eval_channels = eval_channels;
  problem.ula = UlaSpec{scene.num_tx_antennas, scene.spacing_ratio};
  problem.upa = UpaSpec{scene.upa_rows, scene.upa_cols, scene.spacing_ratio};

  const SensingLinkParams link =
      make_sensing_link(scene, geometry, -1, target_reflection_phase);
  problem.target.azimuth = link.azimuth;
  problem.target.elevation = link.elevation;
  problem.target.bs_angle = link.bs_angle;
  problem.target.reflection = link.reflection;

  problem.vue_bs_angles.reserve(geometry.vues.size());
  for (const auto& v : geometry.vues) problem.vue_bs_angles.push_back(v.bs_angle);

  problem.noise_comm = scene.noise_comm_w();
  problem.noise_radar = scene.noise_radar_w();
  problem.power = scene.power_w();
  problem.snapshots = scene.snapshots;
  problem.crlb_threshold = scene.crlb_threshold();
  problem.num_rf_chains = scene.num_rf_chains;
  return problem;
}

PenaltyModel::PenaltyModel(const TargetParams& target, const UlaSpec& ula,
                           const UpaSpec& upa, double noise_radar, int snapshots,
                           const Eigen::MatrixXcd& w_ref) {
  const XiFactors f = xi_factors(target, ula, upa);
  y_ = f.right;

  const double alpha_mag = std::abs(target.reflection);
  Eigen::Matrix<double, 5, 1> precond;
  precond << 1.0, 1.0, 1.0, (alpha_mag > 0.0 ? alpha_mag : 1.0),
      (alpha_mag > 0.0 ? alpha_mag : 1.0);

  const double factor = 2.0 * snapshots / noise_radar;
  for (int l = 0; l < 5; ++l)
    for (int q = 0; q < 5; ++q)
      kappa_(l, q) = factor * precond(l) * precond(q) * f.left[l].dot(f.left[q]);

  // scale_ is the normalizer: information divides by it, so normalized CRLB
  // traces and thresholds multiply by it. Frobenius normalization at the
  // reference beamformer puts the whole matrix on the unit sphere, which is
  // also what the penalty-factor initialization assumes.
  scale_ = 1.0;
  const Matrix5d ref = info(w_ref);
  const double norm = ref.norm();
  if (norm > 0.0) {
    scale_ = norm;
    kappa_ /= scale_;
  }
}

PenaltyModel::Couplings PenaltyModel::couplings(const Eigen::MatrixXcd& w) const {
  std::array<Eigen::VectorXcd, 5> v;
  for (int l = 0; l < 5; ++l) v[l] = w.adjoint() * y_[l];
  Couplings c;
  for (int l = 0; l < 5; ++l)
    for (int q = 0; q < 5; ++q) c(l, q) = kappa_(l, q) * v[q].dot(v[l]);
  return c;
}

Matrix5d PenaltyModel::info(const Eigen::MatrixXcd& w) const {
  Matrix5d j = couplings(w).real();
  return ((j + j.transpose()) / 2.0).eval();
}

double PenaltyModel::penalty_value(const Couplings& c, const Matrix5d& f_tilde) const {
  return (c.real() - f_tilde).squaredNorm();
}

Eigen::MatrixXcd PenaltyModel::penalty_gradient(const Eigen::MatrixXcd& w,
                                                const Couplings& c,
                                                const Matrix5d& f_tilde) const {
  std::array<Eigen::VectorXcd, 5> v;
  for (int l = 0; l < 5; ++l) v[l] = w.adjoint() * y_[l];

  // r is symmetric, so the A^H W sum equals the A W sum with indices
  // swapped and the whole gradient collapses to 2 sum r_lq A_lq W.
  const Matrix5d r = c.real() - f_tilde;
  Eigen::MatrixXcd grad = Eigen::MatrixXcd::Zero(w.rows(), w.cols());
  for (int l = 0; l < 5; ++l) {
    Eigen::VectorXcd t = Eigen::VectorXcd::Zero(w.cols());
    for (int q = 0; q < 5; ++q) t += std::conj(2.0 * r(l, q) * kappa_(l, q)) * v[q];
    grad += y_[l] * t.adjoint();
  }
  return grad;
}

std::array<Eigen::MatrixXcd, 25> penalty_coefficients(const TargetParams& target,
                                                      const UlaSpec& ula,
                                                      const UpaSpec& upa,
                                                      double noise_radar,
                                                      int snapshots) {
  const XiFactors f = xi_factors(target, ula, upa);
  const double factor = 2.0 * snapshots / noise_radar;
  std::array<Eigen::MatrixXcd, 25> a;
  for (int l = 0; l < 5; ++l)
    for (int q = 0; q < 5; ++q) {
      const std::complex<double> coupling = factor * f.left[l].dot(f.left[q]);
      a[l * 5 + q] = coupling * f.right[l] * f.right[q].adjoint();
    }
  return a;
}

FpContext FpContext::build(const Eigen::MatrixXcd& channels, const FpState& fp) {
  FpContext ctx;
  ctx.h_eff = kSqrtBitsScale * channels * fp.beta.asDiagonal();
  ctx.lin_weight = kSqrtBitsScale * 2.0 * (1.0 + fp.nu.array()).sqrt();
  return ctx;
}

double FpContext::value(const Eigen::MatrixXcd& w) const {
  const Eigen::MatrixXcd g = h_eff.adjoint() * w;
  double linear = 0.0;
  for (Eigen::Index k = 0; k < g.rows(); ++k) linear += lin_weight(k) * g(k, k).real();
  return linear - g.squaredNorm();
}

Eigen::MatrixXcd FpContext::gradient(const Eigen::MatrixXcd& w) const {
  const Eigen::MatrixXcd g = h_eff.adjoint() * w;
  return h_eff * lin_weight.asDiagonal() - 2.0 * (h_eff * g);
}

double ascent_objective(const Eigen::MatrixXcd& w, const FpContext& fp,
                        const PenaltyModel& model, const Matrix5d& f_tilde,
                        double rho1) {
  return fp.value(w) - model.penalty_value(model.couplings(w), f_tilde) / (2.0 * rho1);
}

Eigen::MatrixXcd grad_w(const Eigen::MatrixXcd& w, const FpContext& fp,
                        const PenaltyModel& model, const Matrix5d& f_tilde,
                        double rho1) {
  return fp.gradient(w) -
         model.penalty_gradient(w, model.couplings(w), f_tilde) / rho1;
}

Eigen::MatrixXcd project_power(const Eigen::MatrixXcd& w, double power) {
  const double norm2 = w.squaredNorm();
  if (norm2 <= power || norm2 == 0.0) return w;
  return std::sqrt(power / norm2) * w;
}

Eigen::MatrixXcd blend_beamformer(const PddProblem& problem, double mu) {
  const int m = static_cast<int>(problem.design_channels.rows());
  const int k = static_cast<int>(problem.design_channels.cols());
  Eigen::MatrixXcd w(m, k);
  for (int u = 0; u < k; ++u)
    w.col(u) = (1.0 - mu) * ula_steering(problem.ula, problem.vue_bs_angles[u]);
  w += mu * ula_steering(problem.ula, problem.target.bs_angle) *
       Eigen::RowVectorXcd::Ones(k);
  w *= std::sqrt(problem.power) / w.norm();
  return w;
}

Eigen::MatrixXcd reference_beamformer(const PddProblem& problem) {
  return blend_beamformer(problem, 0.0);
}

double trace_crlb_physical(const PddProblem& problem, const Eigen::MatrixXcd& w) {
  try {
    return crlb(fim(problem.target, problem.ula, problem.upa, w * w.adjoint(),
                    problem.noise_radar, problem.snapshots))
        .trace;
  } catch (const SingularFim&) {
    return std::numeric_limits<double>::infinity();
  }
}

InitResult init_beamformer(const PddProblem& problem, const PenaltyModel& model,
                           const PddConfig& cfg) {
  const bool bounded = std::isfinite(problem.crlb_threshold);
  const double threshold = problem.crlb_threshold * (1.0 - cfg.crlb_margin);

  InitResult init;
  bool found = false;
  for (double mu = 0.0; mu <= 1.0 + 1e-12; mu += cfg.init_mu_step) {
    const double mu_clamped = std::min(mu, 1.0);
    Eigen::MatrixXcd w_i = blend_beamformer(problem, mu_clamped);
    if (!bounded || trace_crlb_physical(problem, w_i) <= threshold) {
      init.w = w_i;
      init.mu = mu_clamped;
      found = true;
      break;
    }
    if (mu_clamped >= 1.0) break;
  }
  if (!found)
    throw InfeasibleThreshold(
        "CRLB threshold unreachable at this power even with all beams on the target");

  FpState fp;
  fp.nu = update_nu(problem.design_channels, init.w, problem.noise_comm);
  fp.beta = update_beta(problem.design_channels, init.w, fp.nu, problem.noise_comm);
  const double r0 = r_sum(fp, problem.design_channels, init.w, problem.noise_comm);
  init.rho1 = model.info(init.w).squaredNorm() / (2.0 * std::max(r0, 1e-6));
  return init;
}

namespace {

double augmented_objective(const PddState& state, const PddProblem& problem,
                           const PenaltyModel& model) {
  const Matrix5d f_tilde = state.f_xi - state.rho1 * state.z;
  const double pen = model.penalty_value(model.couplings(state.w), f_tilde);
  return r_sum(state.fp, problem.design_channels, state.w, problem.noise_comm) -
         pen / (2.0 * state.rho1);
}

void check_monotone(PddState& state, double before, double after) {
  if (after < before - 1e-8 * (1.0 + std::abs(before))) ++state.monotonicity_violations;
}

}  // namespace

void inner_loop(PddState& state, const PddProblem& problem, const PenaltyModel& model,
                BeamformerUpdater& updater, const PddConfig& cfg) {
  const bool bounded = std::isfinite(problem.crlb_threshold);
  // Normalized information entries are O(1), so 1e12 is effectively no bound.
  const double threshold =
      bounded ? model.scaled_threshold(problem.crlb_threshold * (1.0 - cfg.crlb_margin))
              : 1e12;

  double al = augmented_objective(state, problem, model);
  for (int cycle = 0; cycle < cfg.max_inner; ++cycle) {
    const double al_entry = al;

    // Surrogate auxiliaries: closed-form joint maximizers.
    state.fp.nu = update_nu(problem.design_channels, state.w, problem.noise_comm);
    state.fp.beta =
        update_beta(problem.design_channels, state.w, state.fp.nu, problem.noise_comm);
    double al_next = augmented_objective(state, problem, model);
    check_monotone(state, al, al_next);
    al = al_next;

    // Constraint surrogate: nearest feasible information matrix. Keep the
    // previous pair if the solver returns something worse.
    const Matrix5d j = model.info(state.w);
    const SdpSolution sol = solve_sdp_subproblem(j, threshold, state.rho1, state.z);
    const auto c = model.couplings(state.w);
    const double cand_pen =
        model.penalty_value(c, sol.f_xi - state.rho1 * state.z);
    const double prev_pen =
        model.penalty_value(c, state.f_xi - state.rho1 * state.z);
    if (!state.sdp_feasible || cand_pen <= prev_pen + 1e-12 * (1.0 + prev_pen)) {
      state.f_xi = sol.f_xi;
      state.omega = sol.omega;
      state.sdp_feasible = true;
    }
    al_next = augmented_objective(state, problem, model);
    check_monotone(state, al, al_next);
    al = al_next;

    // Beamformer ascent.
    const FpContext ctx = FpContext::build(problem.design_channels, state.fp);
    const Matrix5d f_tilde = state.f_xi - state.rho1 * state.z;
    updater.ascend(ctx, model, f_tilde, state.rho1, cfg);
    state.w = updater.effective_w();
    al_next = augmented_objective(state, problem, model);
    check_monotone(state, al, al_next);
    al = al_next;

    if (std::abs(al - al_entry) <= cfg.inner_tol * (1.0 + std::abs(al))) break;
  }
  state.al_value = al;
}

double outer_update(PddState& state, const PenaltyModel& model, const PddConfig& cfg) {
  const Matrix5d gap = model.info(state.w) - state.f_xi;
  const double violation = gap.cwiseAbs().maxCoeff();

  // Fixed threshold when configured; otherwise a progress rule: take the
  // free dual step while the violation keeps contracting, strengthen the
  // penalty as soon as it stalls.
  const bool dual_step =
      cfg.violation_switch > 0.0
          ? violation <= cfg.violation_switch
          : state.outer_iter > 0 && violation <= 0.9 * state.prev_violation;

  if (dual_step)
    state.z += gap / state.rho1;
  else
    state.rho1 *= cfg.penalty_decay;

  state.prev_violation = violation;
  ++state.outer_iter;
  return violation;
}

PddResult run_pdd_loop(const PddProblem& problem, const PenaltyModel& model,
                       const InitResult& init, BeamformerUpdater& updater,
                       const PddConfig& cfg) {
  PddState state;
  state.w = updater.effective_w();
  state.rho1 = init.rho1;
  state.fp.nu = update_nu(problem.design_channels, state.w, problem.noise_comm);
  state.fp.beta =
      update_beta(problem.design_channels, state.w, state.fp.nu, problem.noise_comm);

  PddResult result;
  double prev_rate = -1.0;
  double violation = std::numeric_limits<double>::infinity();
  for (int outer = 0; outer < cfg.max_outer; ++outer) {
    inner_loop(state, problem, model, updater, cfg);
    violation = outer_update(state, model, cfg);

    const double rate =
        sinr_and_rate(problem.eval_channels, state.w, problem.noise_comm).sum_rate;
    if (cfg.record_trace) {
      result.trace.push_back({outer + 1, state.al_value, rate, violation,
                              trace_crlb_physical(problem, state.w), state.rho1,
                              updater.rho2()});
    }
    const bool rate_settled =
        prev_rate >= 0.0 && std::abs(rate - prev_rate) <= cfg.rate_tol * (1.0 + rate);
    prev_rate = rate;
    if (violation < cfg.violation_tol && rate_settled) {
      result.converged = true;
      break;
    }
  }

  result.w = state.w;
  result.rate = sinr_and_rate(problem.eval_channels, state.w, problem.noise_comm).sum_rate;
  result.trace_crlb = trace_crlb_physical(problem, state.w);
  result.violation = violation;
  result.outer_iterations = state.outer_iter;
  result.monotonicity_violations = state.monotonicity_violations;
  return result;
}

namespace {

class DigitalUpdater final : public BeamformerUpdater {
 public:
  DigitalUpdater(Eigen::MatrixXcd w, double power)
      : w_(std::move(w)), power_(power) {}

  void ascend(const FpContext& fp, const PenaltyModel& model, const Matrix5d& f_tilde,
              double rho1, const PddConfig& cfg) override {
    double obj = ascent_objective(w_, fp, model, f_tilde, rho1);
    bool progressing = true;
    for (int it = 0; it < cfg.max_ascent_steps && progressing; ++it) {
      const Eigen::MatrixXcd grad = grad_w(w_, fp, model, f_tilde, rho1);
      if (grad.squaredNorm() <= 1e-30) break;

      step_ = std::min(step_ * 2.0, 1e12);
      progressing = false;
      for (int back = 0; back < cfg.max_backtracks; ++back) {
        const Eigen::MatrixXcd cand = project_power(w_ + step_ * grad, power_);
        const double move2 = (cand - w_).squaredNorm();
        if (move2 == 0.0) break;
        const double cand_obj = ascent_objective(cand, fp, model, f_tilde, rho1);
        if (cand_obj >= obj + cfg.armijo_slope / step_ * move2) {
          w_ = cand;
          progressing = cand_obj - obj > 1e-9 * (1.0 + std::abs(cand_obj));
          obj = cand_obj;
          break;
        }
        step_ *= cfg.armijo_shrink;
      }
    }
  }

  Eigen::MatrixXcd effective_w() const override { return w_; }

 private:
  Eigen::MatrixXcd w_;
  double power_;
  double step_ = 1.0;
};

}  // namespace

PddResult optimize_digital(const PddProblem& problem, const PddConfig& cfg) {
  const PenaltyModel model(problem.target, problem.ula, problem.upa,
                           problem.noise_radar, problem.snapshots,
                           reference_beamformer(problem));
  const InitResult init = init_beamformer(problem, model, cfg);

  DigitalUpdater updater(init.w, problem.power);
  PddResult result = run_pdd_loop(problem, model, init, updater, cfg);

  result.w = project_power(result.w, problem.power);

  // The penalty enforces the bound only up to the residual violation; nudge
  // back toward the feasible initializer in the rare case it overshoots.
  if (std::isfinite(problem.crlb_threshold)) {
    const double limit = problem.crlb_threshold * (1.0 + 1e-3);
    if (!(trace_crlb_physical(problem, result.w) <= limit)) {
      for (double blend = 0.05; blend <= 1.0 + 1e-9; blend += 0.05) {
        Eigen::MatrixXcd cand =
            project_power((1.0 - blend) * result.w + blend * init.w, problem.power);
        if (trace_crlb_physical(problem, cand) <= problem.crlb_threshold) {
          result.w = cand;
          result.feasibility_restored = true;
          break;
        }
      }
    }
  }

  result.rate = sinr_and_rate(problem.eval_channels, result.w, problem.noise_comm).sum_rate;
  result.trace_crlb = trace_crlb_physical(problem, result.w);
  return result;
}

}  // namespace ssac
