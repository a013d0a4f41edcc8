#include "ssac/sdp.hpp"

#include <doctest.h>

#include "oracles.hpp"
#include "ssac/errors.hpp"
#include "ssac/rng.hpp"

using namespace ssac;

namespace {

Matrix5d random_symmetric(Rng& rng, double scale) {
  Matrix5d m;
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) m(i, j) = m(j, i) = scale * rng.normal();
  return m;
}

void check_feasible(const SdpSolution& sol, double threshold) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> omega_eig(sol.omega);
  CHECK(omega_eig.eigenvalues().minCoeff() >= -1e-8);
  CHECK(omega_eig.eigenvalues().minCoeff() > 0.0);  // interior method stays inside
  CHECK(sol.omega.inverse().trace() <= threshold * (1.0 + 1e-6));

  Matrix5d shifted = sol.f_xi;
  shifted.topLeftCorner<2, 2>() -= sol.omega;
  Eigen::SelfAdjointEigenSolver<Matrix5d> cone_eig(shifted);
  CHECK(cone_eig.eigenvalues().minCoeff() >= -1e-8 * sol.f_xi.norm());
}

}  // namespace

TEST_CASE("unconstrained optimum feasible: returns the target") {
  // G comfortably inside the cone: Schur complement 5 I, threshold 10
  Matrix5d g = Matrix5d::Identity() * 5.0;
  const SdpSolution sol = solve_sdp_subproblem(g, 10.0, 1.0, Matrix5d::Zero());
  CHECK(!sol.stalled);
  CHECK(sol.kkt_residual <= 1e-7);
  CHECK((sol.f_xi - g).norm() <= 1e-4 * g.norm());
  check_feasible(sol, 10.0);
}

TEST_CASE("loose threshold reduces to the cone projection") {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const Matrix5d g = random_symmetric(rng, 2.0);
    const SdpSolution sol = solve_sdp_subproblem(g, 1e9, 1.0, Matrix5d::Zero());
    const Matrix5d projected = oracles::psd_projection(g);
    CHECK((sol.f_xi - projected).norm() <= 2e-3 * (1.0 + projected.norm()));
    CHECK(sol.objective <= (projected - g).squaredNorm() + 2e-3 * (1.0 + g.norm()));
  }
}

TEST_CASE("solution always satisfies the constraints") {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const Matrix5d j = random_symmetric(rng, 1.5);
    const Matrix5d z = random_symmetric(rng, 0.5);
    const double rho = rng.uniform(0.1, 2.0);
    const double threshold = rng.uniform(0.5, 50.0);
    const SdpSolution sol = solve_sdp_subproblem(j, threshold, rho, z);
    CHECK(sol.kkt_residual <= 1e-7);
    check_feasible(sol, threshold);
  }
}

TEST_CASE("dual term shifts the target") {
  Rng rng(19);
  const Matrix5d j = random_symmetric(rng, 1.0);
  const Matrix5d z = random_symmetric(rng, 1.0);
  const SdpSolution with_dual = solve_sdp_subproblem(j, 1e9, 0.7, z);
  const Matrix5d g = j + 0.7 * z;
  CHECK((with_dual.f_xi - oracles::psd_projection(g)).norm() <=
        2e-3 * (1.0 + g.norm()));
}

TEST_CASE("nonpositive threshold rejected") {
  CHECK_THROWS_AS(solve_sdp_subproblem(Matrix5d::Identity(), 0.0, 1.0, Matrix5d::Zero()),
                  InfeasibleThreshold);
}
