#include "ssac/had.hpp"

#include <cmath>
#include <limits>

#include "ssac/errors.hpp"

namespace ssac {

Eigen::MatrixXcd grad_fd(const Eigen::MatrixXcd& fa, const Eigen::MatrixXcd& fd,
                         const FpContext& fp, const PenaltyModel& model,
                         const Matrix5d& f_tilde, double rho1) {
  return fa.adjoint() * grad_w(fa * fd, fp, model, f_tilde, rho1);
}

Eigen::MatrixXcd project_fd(const Eigen::MatrixXcd& fa, const Eigen::MatrixXcd& fd,
                            double power) {
  const double norm2 = (fa * fd).squaredNorm();
  if (norm2 <= power || norm2 == 0.0) return fd;
  return std::sqrt(power / norm2) * fd;
}

double power_penalty(const Eigen::MatrixXcd& fa, const Eigen::MatrixXcd& fd,
                     double power) {
  const double overshoot = (fa * fd).squaredNorm() - power;
  return overshoot > 0.0 ? overshoot * overshoot : 0.0;
}

Eigen::MatrixXcd grad_fa_fc(const Eigen::MatrixXcd& fa, const Eigen::MatrixXcd& fd,
                            const FpContext& fp, const PenaltyModel& model,
                            const Matrix5d& f_tilde, double rho1, double rho2,
                            double power) {
  const Eigen::MatrixXcd w = fa * fd;
  Eigen::MatrixXcd grad = grad_w(w, fp, model, f_tilde, rho1) * fd.adjoint();
  const double overshoot = w.squaredNorm() - power;
  if (overshoot > 0.0) grad -= (4.0 * overshoot / rho2) * (w * fd.adjoint());
  return grad;
}

Eigen::MatrixXcd tangent_project(const Eigen::MatrixXcd& fa,
                                 const Eigen::MatrixXcd& euclidean) {
  const Eigen::MatrixXd radial =
      (euclidean.array() * fa.array().conjugate()).real();
  return euclidean - (radial.array() * fa.array()).matrix();
}

Eigen::MatrixXcd retract_unit_modulus(const Eigen::MatrixXcd& previous,
                                      const Eigen::MatrixXcd& updated) {
  Eigen::MatrixXcd out(updated.rows(), updated.cols());
  for (Eigen::Index j = 0; j < updated.cols(); ++j)
    for (Eigen::Index i = 0; i < updated.rows(); ++i) {
      const std::complex<double> u = updated(i, j);
      const double mag = std::abs(u);
      out(i, j) = mag < 1e-14 ? previous(i, j) : u / mag;
    }
  return out;
}

namespace {

double hybrid_objective(const Eigen::MatrixXcd& fa, const Eigen::MatrixXcd& fd,
                        const FpContext& fp, const PenaltyModel& model,
                        const Matrix5d& f_tilde, double rho1) {
  return ascent_objective(fa * fd, fp, model, f_tilde, rho1);
}

}  // namespace

void riemannian_step_fc(Eigen::MatrixXcd& fa, Eigen::MatrixXcd& fd,
                        const FpContext& fp, const PenaltyModel& model,
                        const Matrix5d& f_tilde, double rho1, double rho2,
                        double power, double& step_hint, const PddConfig& cfg) {
  const Eigen::MatrixXcd euclidean =
      grad_fa_fc(fa, fd, fp, model, f_tilde, rho1, rho2, power);
  const Eigen::MatrixXcd rgrad = tangent_project(fa, euclidean);
  const double gnorm2 = rgrad.squaredNorm();
  if (gnorm2 <= 1e-30) return;

  const double obj = hybrid_objective(fa, fd, fp, model, f_tilde, rho1);
  step_hint = std::min(step_hint * 2.0, 1e12);
  for (int back = 0; back < cfg.max_backtracks; ++back) {
    const Eigen::MatrixXcd cand_fa = retract_unit_modulus(fa, fa + step_hint * rgrad);
    const Eigen::MatrixXcd cand_fd = project_fd(cand_fa, fd, power);
    const double cand = hybrid_objective(cand_fa, cand_fd, fp, model, f_tilde, rho1);
    const double move2 = (cand_fa - fa).squaredNorm();
    if (move2 > 0.0 && cand >= obj + cfg.armijo_slope / step_hint * move2) {
      fa = cand_fa;
      fd = cand_fd;
      return;
    }
    step_hint *= cfg.armijo_shrink;
  }
}

Eigen::VectorXcd dk_transform(const Eigen::VectorXcd& dk, int np) {
  Eigen::VectorXcd diag(dk.size() * np);
  for (Eigen::Index i = 0; i < dk.size(); ++i)
    diag.segment(i * np, np).setConstant(dk(i));
  return diag;
}

Eigen::MatrixXcd analog_from_phases(const Eigen::VectorXcd& p, int n_rf) {
  const int m = static_cast<int>(p.size());
  const int np = m / n_rf;
  Eigen::MatrixXcd fa = Eigen::MatrixXcd::Zero(m, n_rf);
  for (int c = 0; c < n_rf; ++c) fa.col(c).segment(c * np, np) = p.segment(c * np, np);
  return fa;
}

Eigen::VectorXcd grad_p_pc(const Eigen::VectorXcd& p, const Eigen::MatrixXcd& fd,
                           const FpContext& fp, const PenaltyModel& model,
                           const Matrix5d& f_tilde, double rho1) {
  const int n_rf = static_cast<int>(fd.rows());
  const int np = static_cast<int>(p.size()) / n_rf;
  const Eigen::MatrixXcd fa = analog_from_phases(p, n_rf);
  const Eigen::MatrixXcd gw = grad_w(fa * fd, fp, model, f_tilde, rho1);

  // W(p) = diag(p) * R with R_ik = fd(block(i), k); the chain rule reduces to
  // row sums of gw .* conj(R).
  Eigen::VectorXcd grad(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const int block = static_cast<int>(i) / np;
    grad(i) = (gw.row(i).array() * fd.row(block).array().conjugate()).sum();
  }
  return grad;
}

void riemannian_step_pc(Eigen::VectorXcd& p, const Eigen::MatrixXcd& fd,
                        const FpContext& fp, const PenaltyModel& model,
                        const Matrix5d& f_tilde, double rho1, double& step_hint,
                        const PddConfig& cfg) {
  const int n_rf = static_cast<int>(fd.rows());
  const Eigen::VectorXcd euclidean = grad_p_pc(p, fd, fp, model, f_tilde, rho1);
  const Eigen::VectorXd radial = (euclidean.array() * p.array().conjugate()).real();
  const Eigen::VectorXcd rgrad = euclidean - (radial.array() * p.array()).matrix();
  if (rgrad.squaredNorm() <= 1e-30) return;

  const double obj =
      hybrid_objective(analog_from_phases(p, n_rf), fd, fp, model, f_tilde, rho1);
  step_hint = std::min(step_hint * 2.0, 1e12);
  for (int back = 0; back < cfg.max_backtracks; ++back) {
    Eigen::VectorXcd cand = p + step_hint * rgrad;
    for (Eigen::Index i = 0; i < cand.size(); ++i) {
      const double mag = std::abs(cand(i));
      cand(i) = mag < 1e-14 ? p(i) : cand(i) / mag;
    }
    const double cand_obj =
        hybrid_objective(analog_from_phases(cand, n_rf), fd, fp, model, f_tilde, rho1);
    const double move2 = (cand - p).squaredNorm();
    if (move2 > 0.0 && cand_obj >= obj + cfg.armijo_slope / step_hint * move2) {
      p = cand;
      return;
    }
    step_hint *= cfg.armijo_shrink;
  }
}

HadAscentReport optimize_had(HadBeamformer& beamformer, const FpContext& fp,
                             const PenaltyModel& model, const Matrix5d& f_tilde,
                             double rho1, double& rho2, double power,
                             const PddConfig& cfg) {
  const bool fully = beamformer.architecture == Architecture::kFullyConnected;
  const int n_rf = static_cast<int>(beamformer.analog.cols());

  double obj = hybrid_objective(beamformer.analog, beamformer.digital, fp, model,
                                f_tilde, rho1);
  HadAscentReport report;
  double digital_step = 1.0;
  double analog_step = 1.0;

  const int max_rounds = 5;
  for (int round = 0; round < max_rounds; ++round) {
    ++report.rounds;
    const double round_entry = obj;

    // Digital stage: projected gradient ascent at fixed analog network.
    for (int it = 0; it < cfg.digital_steps; ++it) {
      const Eigen::MatrixXcd grad = grad_fd(beamformer.analog, beamformer.digital,
                                            fp, model, f_tilde, rho1);
      if (grad.squaredNorm() <= 1e-30) break;
      digital_step = std::min(digital_step * 2.0, 1e12);
      bool accepted = false;
      for (int back = 0; back < cfg.max_backtracks; ++back) {
        Eigen::MatrixXcd cand = beamformer.digital + digital_step * grad;
        cand = project_fd(beamformer.analog, cand, power);
        const double move2 = (cand - beamformer.digital).squaredNorm();
        if (move2 == 0.0) break;
        const double cand_obj =
            hybrid_objective(beamformer.analog, cand, fp, model, f_tilde, rho1);
        if (cand_obj >= obj + cfg.armijo_slope / digital_step * move2) {
          beamformer.digital = cand;
          const double gain = cand_obj - obj;
          obj = cand_obj;
          accepted = true;
          if (gain <= 1e-9 * (1.0 + std::abs(obj))) it = cfg.digital_steps;
          break;
        }
        digital_step *= cfg.armijo_shrink;
      }
      if (!accepted) break;
    }

    // Analog stage.
    if (fully) {
      for (int it = 0; it < cfg.analog_steps; ++it) {
        const double before = obj;
        riemannian_step_fc(beamformer.analog, beamformer.digital, fp, model, f_tilde,
                           rho1, rho2, power, analog_step, cfg);
        obj = hybrid_objective(beamformer.analog, beamformer.digital, fp, model,
                               f_tilde, rho1);
        if (obj - before <= 1e-9 * (1.0 + std::abs(obj))) break;
      }
      rho2 *= cfg.penalty_decay;
    } else {
      const int np = beamformer.subarray_size();
      Eigen::VectorXcd p(beamformer.analog.rows());
      for (int c = 0; c < n_rf; ++c)
        p.segment(c * np, np) = beamformer.analog.col(c).segment(c * np, np);
      for (int it = 0; it < cfg.analog_steps; ++it) {
        const double before = obj;
        riemannian_step_pc(p, beamformer.digital, fp, model, f_tilde, rho1,
                           analog_step, cfg);
        obj = hybrid_objective(analog_from_phases(p, n_rf), beamformer.digital, fp,
                               model, f_tilde, rho1);
        if (obj - before <= 1e-9 * (1.0 + std::abs(obj))) break;
      }
      beamformer.analog = analog_from_phases(p, n_rf);
    }

    if (obj - round_entry <= cfg.inner_tol * (1.0 + std::abs(obj))) break;
  }

  beamformer.digital = project_fd(beamformer.analog, beamformer.digital, power);
  report.objective = obj;
  return report;
}

namespace {

// Any complex scalar of magnitude <= 2c splits into c e^{j u} + c e^{j v}.
void phase_split(const Eigen::VectorXcd& w, Eigen::VectorXcd& first,
                 Eigen::VectorXcd& second, double& weight) {
  const double peak = w.cwiseAbs().maxCoeff();
  weight = peak > 0.0 ? peak / 2.0 : 1.0;
  first.resize(w.size());
  second.resize(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double mag = std::abs(w(i));
    const double arg = std::arg(w(i));
    const double offset = std::acos(std::min(1.0, mag / (2.0 * weight)));
    first(i) = std::polar(1.0, arg + offset);
    second(i) = std::polar(1.0, arg - offset);
  }
  if (peak <= 0.0) weight = 0.0;
}

}  // namespace

HadBeamformer decompose_baseline(const Eigen::MatrixXcd& w, int n_rf,
                                 Architecture architecture, double power,
                                 int rounds) {
  const int m = static_cast<int>(w.rows());
  const int k = static_cast<int>(w.cols());
  HadBeamformer b;
  b.architecture = architecture;
  b.analog.resize(m, n_rf);
  b.digital = Eigen::MatrixXcd::Zero(n_rf, k);

  const bool fully = architecture == Architecture::kFullyConnected;
  const int np = m / n_rf;

  if (fully && n_rf >= 2 * k) {
    // Exact split: two phase vectors per column, spare chains parked.
    b.analog.setOnes();
    for (int c = 0; c < k; ++c) {
      Eigen::VectorXcd first, second;
      double weight = 0.0;
      phase_split(w.col(c), first, second, weight);
      b.analog.col(2 * c) = first;
      b.analog.col(2 * c + 1) = second;
      b.digital(2 * c, c) = weight;
      b.digital(2 * c + 1, c) = weight;
    }
  } else {
    // Alternating least squares from a deterministic phase start: analog
    // phases seeded from the columns of W (cycled), lightly dithered so the
    // chains are not identical when n_rf > k.
    Rng rng(0x5eedu);
    for (int c = 0; c < n_rf; ++c) {
      const Eigen::VectorXcd& src = w.col(c % k);
      for (int i = 0; i < m; ++i) {
        const double dither = (c >= k) ? rng.uniform(-0.5, 0.5) : 0.0;
        const double arg = std::abs(src(i)) > 0.0 ? std::arg(src(i)) : 0.0;
        b.analog(i, c) = std::polar(1.0, arg + dither);
      }
    }
    if (!fully) {
      Eigen::MatrixXcd masked = Eigen::MatrixXcd::Zero(m, n_rf);
      for (int c = 0; c < n_rf; ++c)
        masked.col(c).segment(c * np, np) = b.analog.col(c).segment(c * np, np);
      b.analog = masked;
    }

    const auto solve_digital = [&](const Eigen::MatrixXcd& fa) {
      Eigen::MatrixXcd gram = fa.adjoint() * fa;
      gram += 1e-12 * gram.trace() *
              Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
      return Eigen::MatrixXcd(gram.ldlt().solve(fa.adjoint() * w));
    };

    for (int round = 0; round < rounds; ++round) {
      // Digital side: least squares at fixed analog network.
      b.digital = solve_digital(b.analog);
      // Analog side: per-entry phase of W F_d^H on the support.
      const Eigen::MatrixXcd outer = w * b.digital.adjoint();
      for (int c = 0; c < n_rf; ++c) {
        const int lo = fully ? 0 : c * np;
        const int len = fully ? m : np;
        for (int i = lo; i < lo + len; ++i) {
          const std::complex<double> v = outer(i, c);
          if (std::abs(v) > 0.0) b.analog(i, c) = v / std::abs(v);
        }
      }
    }
    b.digital = solve_digital(b.analog);
  }

  const double norm = b.effective().norm();
  if (norm > 0.0) b.digital *= std::sqrt(power) / norm;
  return b;
}

namespace {

class HybridUpdater final : public BeamformerUpdater {
 public:
  HybridUpdater(HadBeamformer b, double power, double rho2_init)
      : b_(std::move(b)), power_(power), rho2_(rho2_init) {}

  void ascend(const FpContext& fp, const PenaltyModel& model, const Matrix5d& f_tilde,
              double rho1, const PddConfig& cfg) override {
    optimize_had(b_, fp, model, f_tilde, rho1, rho2_, power_, cfg);
  }

  Eigen::MatrixXcd effective_w() const override { return b_.effective(); }
  double rho2() const override { return rho2_; }

  HadBeamformer& beamformer() { return b_; }

 private:
  HadBeamformer b_;
  double power_;
  double rho2_;
};

}  // namespace

HadResult optimize_hybrid(const PddProblem& problem, Architecture architecture,
                          const PddConfig& cfg) {
  const PenaltyModel model(problem.target, problem.ula, problem.upa,
                           problem.noise_radar, problem.snapshots,
                           reference_beamformer(problem));
  const InitResult init = init_beamformer(problem, model, cfg);

  HadBeamformer b0 = decompose_baseline(init.w, problem.num_rf_chains, architecture,
                                        problem.power);

  // rho2 sized so a 10% power overshoot costs a tenth of the surrogate value
  // at the start.
  FpState fp0;
  fp0.nu = update_nu(problem.design_channels, b0.effective(), problem.noise_comm);
  fp0.beta =
      update_beta(problem.design_channels, b0.effective(), fp0.nu, problem.noise_comm);
  const double fp_scale = std::max(
      std::abs(FpContext::build(problem.design_channels, fp0).value(b0.effective())),
      1e-6);
  const double rho2_init = 0.1 * problem.power * problem.power / fp_scale;

  HybridUpdater updater(std::move(b0), problem.power, rho2_init);
  HadResult result;
  result.base = run_pdd_loop(problem, model, init, updater, cfg);

  HadBeamformer& b = updater.beamformer();
  b.digital = project_fd(b.analog, b.digital, problem.power);

  // Feasibility restoration stays inside the hybrid structure: blend the
  // digital matrix toward target-focused beams through the current analog
  // network.
  if (std::isfinite(problem.crlb_threshold)) {
    const double limit = problem.crlb_threshold * (1.0 + 1e-3);
    if (!(trace_crlb_physical(problem, b.effective()) <= limit)) {
      const Eigen::VectorXcd target_beam =
          ula_steering(problem.ula, problem.target.bs_angle);
      const int k = static_cast<int>(b.digital.cols());
      Eigen::MatrixXcd gram = b.analog.adjoint() * b.analog;
      gram += 1e-12 * gram.trace() * Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
      Eigen::MatrixXcd anchor = gram.ldlt().solve(
          b.analog.adjoint() * (target_beam * Eigen::RowVectorXcd::Ones(k)));
      const double anchor_norm = (b.analog * anchor).norm();
      if (anchor_norm > 0.0) anchor *= std::sqrt(problem.power) / anchor_norm;

      const Eigen::MatrixXcd fd_final = b.digital;
      bool restored = false;
      for (double blend = 0.05; blend <= 1.0 + 1e-9; blend += 0.05) {
        Eigen::MatrixXcd cand = (1.0 - blend) * fd_final + blend * anchor;
        cand = project_fd(b.analog, cand, problem.power);
        if (trace_crlb_physical(problem, b.analog * cand) <= problem.crlb_threshold) {
          b.digital = cand;
          restored = true;
          break;
        }
      }
      if (restored)
        result.base.feasibility_restored = true;
      else
        result.base.converged = false;
    }
  }

  result.base.w = b.effective();
  result.base.rate =
      sinr_and_rate(problem.eval_channels, result.base.w, problem.noise_comm).sum_rate;
  result.base.trace_crlb = trace_crlb_physical(problem, result.base.w);
  result.beamformer = b;
  return result;
}

}  // namespace ssac
