#include "ssac/sdp.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "ssac/errors.hpp"

namespace ssac {

namespace {

// Variable layout: x = [F (15, upper triangle row-major), Omega (3), U (3)].
constexpr int kNumF = 15;
constexpr int kNumVars = 21;
constexpr int kConeDegree = 10;  // 4 + 5 + 1 barrier degrees

using Vec = Eigen::Matrix<double, kNumVars, 1>;
using Hess = Eigen::Matrix<double, kNumVars, kNumVars>;

struct SymIndex {
  int i, j;
};

constexpr std::array<SymIndex, 15> kFIndex = {{{0, 0},
                                               {0, 1},
                                               {0, 2},
                                               {0, 3},
                                               {0, 4},
                                               {1, 1},
                                               {1, 2},
                                               {1, 3},
                                               {1, 4},
                                               {2, 2},
                                               {2, 3},
                                               {2, 4},
                                               {3, 3},
                                               {3, 4},
                                               {4, 4}}};
constexpr std::array<SymIndex, 3> kPairIndex = {{{0, 0}, {0, 1}, {1, 1}}};

Matrix5d unpack_f(const Vec& x) {
  Matrix5d f;
  for (int n = 0; n < kNumF; ++n) {
    f(kFIndex[n].i, kFIndex[n].j) = x(n);
    f(kFIndex[n].j, kFIndex[n].i) = x(n);
  }
  return f;
}

Eigen::Matrix2d unpack_pair(const Vec& x, int offset) {
  Eigen::Matrix2d m;
  m(0, 0) = x(offset);
  m(0, 1) = m(1, 0) = x(offset + 1);
  m(1, 1) = x(offset + 2);
  return m;
}

Eigen::Matrix4d cone1(const Vec& x) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m.topLeftCorner<2, 2>() = unpack_pair(x, kNumF);
  m.bottomRightCorner<2, 2>() = unpack_pair(x, kNumF + 3);
  m.topRightCorner<2, 2>() = Eigen::Matrix2d::Identity();
  m.bottomLeftCorner<2, 2>() = Eigen::Matrix2d::Identity();
  return m;
}

Matrix5d cone2(const Vec& x) {
  Matrix5d m = unpack_f(x);
  m.topLeftCorner<2, 2>() -= unpack_pair(x, kNumF);
  return m;
}

double slack(const Vec& x, double threshold) {
  return threshold - x(kNumF + 3) - x(kNumF + 5);
}

bool strictly_feasible(const Vec& x, double threshold) {
  if (slack(x, threshold) <= 0.0) return false;
  Eigen::LLT<Eigen::Matrix4d> llt1(cone1(x));
  if (llt1.info() != Eigen::Success) return false;
  Eigen::LLT<Matrix5d> llt2(cone2(x));
  return llt2.info() == Eigen::Success;
}

double objective(const Vec& x, const Matrix5d& g) {
  const Matrix5d d = unpack_f(x) - g;
  return d.squaredNorm();
}

// t * objective + barrier, with gradient and Hessian.
struct BarrierEval {
  double value = 0.0;
  Vec grad = Vec::Zero();
  Hess hess = Hess::Zero();
  bool ok = false;
};

BarrierEval eval(const Vec& x, const Matrix5d& g, double threshold, double t) {
  BarrierEval out;
  const double s = slack(x, threshold);
  if (s <= 0.0) return out;

  Eigen::LLT<Eigen::Matrix4d> llt1(cone1(x));
  Eigen::LLT<Matrix5d> llt2(cone2(x));
  if (llt1.info() != Eigen::Success || llt2.info() != Eigen::Success) return out;

  const Eigen::Matrix4d inv1 = llt1.solve(Eigen::Matrix4d::Identity());
  const Matrix5d inv2 = llt2.solve(Matrix5d::Identity());

  double logdet1 = 0.0, logdet2 = 0.0;
  for (int i = 0; i < 4; ++i) logdet1 += std::log(llt1.matrixL()(i, i));
  for (int i = 0; i < 5; ++i) logdet2 += std::log(llt2.matrixL()(i, i));
  logdet1 *= 2.0;
  logdet2 *= 2.0;

  const Matrix5d diff = unpack_f(x) - g;
  out.value = t * diff.squaredNorm() - logdet1 - logdet2 - std::log(s);

  // Y_i = X^-1 B_i for every basis matrix B_i touching each cone; then
  // grad_i = -tr(Y_i) and hess_ij = tr(Y_i Y_j).
  std::vector<Eigen::Matrix4d> y1(kNumVars, Eigen::Matrix4d::Zero());
  std::vector<Matrix5d> y2(kNumVars, Matrix5d::Zero());
  std::vector<bool> in1(kNumVars, false), in2(kNumVars, false);

  auto sym_cols_4 = [&](int i, int j) {
    Eigen::Matrix4d y = Eigen::Matrix4d::Zero();
    y.col(j) += inv1.col(i);
    y.col(i) += inv1.col(j);
    if (i == j) y.col(i) = inv1.col(i);
    return y;
  };
  auto sym_cols_5 = [&](int i, int j, double sign) {
    Matrix5d y = Matrix5d::Zero();
    y.col(j) += sign * inv2.col(i);
    y.col(i) += sign * inv2.col(j);
    if (i == j) y.col(i) = sign * inv2.col(i);
    return y;
  };

  for (int n = 0; n < kNumF; ++n) {
    y2[n] = sym_cols_5(kFIndex[n].i, kFIndex[n].j, 1.0);
    in2[n] = true;
  }
  for (int n = 0; n < 3; ++n) {
    const int i = kPairIndex[n].i, j = kPairIndex[n].j;
    y1[kNumF + n] = sym_cols_4(i, j);
    in1[kNumF + n] = true;
    y2[kNumF + n] = sym_cols_5(i, j, -1.0);
    in2[kNumF + n] = true;
  }
  for (int n = 0; n < 3; ++n) {
    const int i = kPairIndex[n].i + 2, j = kPairIndex[n].j + 2;
    y1[kNumF + 3 + n] = sym_cols_4(i, j);
    in1[kNumF + 3 + n] = true;
  }

  for (int n = 0; n < kNumVars; ++n) {
    double grad = 0.0;
    if (in1[n]) grad -= y1[n].trace();
    if (in2[n]) grad -= y2[n].trace();
    out.grad(n) = grad;
  }
  for (int a = 0; a < kNumVars; ++a)
    for (int b = a; b < kNumVars; ++b) {
      double h = 0.0;
      if (in1[a] && in1[b]) h += (y1[a] * y1[b]).trace();
      if (in2[a] && in2[b]) h += (y2[a] * y2[b]).trace();
      out.hess(a, b) += h;
      if (a != b) out.hess(b, a) += h;
    }

  // Scalar slack barrier: only the two U diagonal entries enter the trace.
  const int u0 = kNumF + 3, u2 = kNumF + 5;
  out.grad(u0) += 1.0 / s;
  out.grad(u2) += 1.0 / s;
  out.hess(u0, u0) += 1.0 / (s * s);
  out.hess(u0, u2) += 1.0 / (s * s);
  out.hess(u2, u0) += 1.0 / (s * s);
  out.hess(u2, u2) += 1.0 / (s * s);

  // Quadratic objective: diagonal entries weight 1, off-diagonals 2.
  for (int n = 0; n < kNumF; ++n) {
    const double w = (kFIndex[n].i == kFIndex[n].j) ? 2.0 : 4.0;
    out.grad(n) += t * w * diff(kFIndex[n].i, kFIndex[n].j);
    out.hess(n, n) += t * w;
  }

  out.ok = true;
  return out;
}

}  // namespace

SdpSolution solve_sdp_subproblem(const Matrix5d& j_target, double threshold,
                                 double penalty, const Matrix5d& dual) {
  if (!(threshold > 0.0))
    throw InfeasibleThreshold("CRLB threshold must be positive");

  Matrix5d g = j_target + penalty * dual;
  g = ((g + g.transpose()) / 2.0).eval();

  // Normalize so the Newton iteration sees O(1) numbers.
  const double scale = std::max(1e-12, g.cwiseAbs().maxCoeff());
  const Matrix5d gs = g / scale;
  const double eta = threshold * scale;

  // Strictly feasible start: Omega = c I with tr(Omega^-1) = eta/2,
  // U = 1.5/c I, F comfortably inside the cone.
  Vec x = Vec::Zero();
  const double c = 4.0 / eta;
  const double f0 = 2.0 * c + 1.0;
  x(0) = x(5) = x(9) = x(12) = x(14) = f0;                  // F diagonal
  x(kNumF) = x(kNumF + 2) = c;                              // Omega
  x(kNumF + 3) = x(kNumF + 5) = 1.5 / c;                    // U

  SdpSolution solution;
  solution.stalled = true;

  const int max_newton = 60;
  const double mu = 10.0;
  double t = 1.0;
  const double gap_tol = 1e-9;
  int stage_budget = 40;

  while (stage_budget-- > 0) {
    for (int it = 0; it < max_newton; ++it) {
      BarrierEval e = eval(x, gs, eta, t);
      if (!e.ok) break;  // should not happen from a feasible iterate
      Eigen::LDLT<Hess> ldlt(e.hess);
      Vec step = ldlt.solve(-e.grad);
      const double decrement2 = -e.grad.dot(step);
      if (!(decrement2 > 0.0)) break;
      if (decrement2 / 2.0 < 1e-12) break;

      double lambda = 1.0;
      bool accepted = false;
      for (int back = 0; back < 60; ++back) {
        const Vec candidate = x + lambda * step;
        if (strictly_feasible(candidate, eta)) {
          BarrierEval ec = eval(candidate, gs, eta, t);
          if (ec.ok && ec.value <= e.value - 1e-4 * lambda * decrement2) {
            x = candidate;
            accepted = true;
            break;
          }
        }
        lambda *= 0.5;
      }
      if (!accepted) break;
    }
    if (kConeDegree / t < gap_tol) {
      solution.stalled = false;
      break;
    }
    t *= mu;
  }

  solution.f_xi = unpack_f(x) * scale;
  solution.omega = unpack_pair(x, kNumF) * scale;
  solution.objective = (solution.f_xi - g).squaredNorm();
  solution.kkt_residual = kConeDegree / t;
  return solution;
}

}  // namespace ssac
