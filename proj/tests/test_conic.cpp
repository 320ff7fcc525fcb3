#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "isacbeam/conic/problem.hpp"
#include "isacbeam/conic/solver.hpp"
#include "isacbeam/rng.hpp"

using namespace isacbeam;
using namespace isacbeam::conic;

namespace {

Eigen::MatrixXcd random_hermitian(int n, Rng& rng) {
  Eigen::MatrixXcd G(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) G(r, c) = rng.cnormal();
  return 0.5 * (G + G.adjoint());
}

}  // namespace

TEST_CASE("LinExpr algebra") {
  LinExpr e = LinExpr::variable(0, 2.0) + LinExpr::variable(1, -1.0) + LinExpr(3.0);
  e += LinExpr::variable(0, -2.0);
  e.compress();
  CHECK(e.terms().size() == 1);  // x0 cancels
  Eigen::VectorXd x(2);
  x << 5.0, 4.0;
  CHECK(e.eval(x) == doctest::Approx(-1.0));

  LinExpr s = 2.0 * LinExpr::variable(1) - LinExpr(1.0);
  CHECK(s.eval(x) == doctest::Approx(7.0));
}

TEST_CASE("embed_hermitian numeric examples") {
  SUBCASE("real scalar") {
    Eigen::MatrixXcd M(1, 1);
    M << 1.0;
    const Eigen::MatrixXd E = embed_hermitian(M);
    CHECK(E.rows() == 2);
    CHECK((E - Eigen::MatrixXd::Identity(2, 2)).norm() == doctest::Approx(0.0));
  }
  SUBCASE("Pauli-Y eigenvalues doubled") {
    Eigen::MatrixXcd M(2, 2);
    M << std::complex<double>(0, 0), std::complex<double>(0, -1),
        std::complex<double>(0, 1), std::complex<double>(0, 0);
    const Eigen::MatrixXd E = embed_hermitian(M);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(E, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    CHECK(ev(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ev(1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ev(2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ev(3) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("random Hermitian: min eigenvalues agree and all double up") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + static_cast<int>(rng.uniform() * 4);
      const Eigen::MatrixXcd M = random_hermitian(n, rng);
      const Eigen::MatrixXd E = embed_hermitian(M);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> mc(M, Eigen::EigenvaluesOnly);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> me(E, Eigen::EigenvaluesOnly);
      CHECK(me.eigenvalues().minCoeff() ==
            doctest::Approx(mc.eigenvalues().minCoeff()).epsilon(1e-10));
      for (int i = 0; i < n; ++i) {
        CHECK(me.eigenvalues()(2 * i) ==
              doctest::Approx(mc.eigenvalues()(i)).epsilon(1e-9));
        CHECK(me.eigenvalues()(2 * i + 1) ==
              doctest::Approx(mc.eigenvalues()(i)).epsilon(1e-9));
      }
    }
  }
  SUBCASE("non-Hermitian input rejected") {
    Eigen::MatrixXcd M(2, 2);
    M << 1.0, 2.0, 3.0, 4.0;
    CHECK_THROWS_AS(embed_hermitian(M), std::invalid_argument);
  }
}

TEST_CASE("affine embedding matches the numeric embedding") {
  Rng rng(23);
  ConicProblem prob("embedding_check");
  HermitianVar W = prob.add_hermitian("W", 4);
  const RAffineMatrix S = embed_hermitian(W.expr());
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x(prob.num_vars());
    for (int i = 0; i < x.size(); ++i) x(i) = rng.normal();
    const Eigen::MatrixXcd M = W.value(x);
    const Eigen::MatrixXd direct = embed_hermitian(M);
    const Eigen::MatrixXd via_expr = S.eval(x);
    CHECK((direct - via_expr).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("hermitian variable round trip") {
  ConicProblem prob("roundtrip");
  HermitianVar W = prob.add_hermitian("W", 3);
  Rng rng(29);
  Eigen::VectorXd x(prob.num_vars());
  for (int i = 0; i < x.size(); ++i) x(i) = rng.normal();
  const Eigen::MatrixXcd M = W.value(x);
  CHECK((M - M.adjoint()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  const Eigen::MatrixXcd from_expr = W.expr().eval(x);
  CHECK((M - from_expr).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("solve: identity-bounded trace minimization") {
  ConicProblem prob("trace_min");
  HermitianVar X = prob.add_hermitian("X", 3);
  CAffineMatrix shifted = X.expr();
  shifted += CAffineMatrix::constant(-Eigen::MatrixXcd::Identity(3, 3));
  prob.add_hermitian_lmi(shifted, "X_minus_I");
  LinExpr neg_trace;
  for (int i = 0; i < 3; ++i) neg_trace -= LinExpr::variable(X.offset + i);
  prob.set_objective_max(neg_trace);

  const ConicSolution sol = solve(prob);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective_value == doctest::Approx(-3.0).epsilon(1e-6));
  const Eigen::MatrixXcd Xv = X.value(sol.x);
  CHECK((Xv - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("solve: infeasible box") {
  ConicProblem prob("infeasible");
  ScalarVar x = prob.add_free("x");
  prob.add_linear_ge0(LinExpr::variable(x.index) - LinExpr(1.0), "x_ge_1");
  prob.add_linear_ge0(-LinExpr::variable(x.index), "x_le_0");
  prob.set_objective_max(LinExpr::variable(x.index));
  const ConicSolution sol = solve(prob);
  CHECK(sol.status == SolveStatus::infeasible);
}

TEST_CASE("solve: unbounded ray") {
  ConicProblem prob("unbounded");
  ScalarVar x = prob.add_free("x");
  prob.add_linear_ge0(LinExpr::variable(x.index) - LinExpr(1.0), "x_ge_1");
  prob.set_objective_max(LinExpr::variable(x.index));
  const ConicSolution sol = solve(prob);
  CHECK(sol.status == SolveStatus::unbounded);
}

TEST_CASE("solve: exponential-cone log epigraph") {
  // max u s.t. u <= log2(1+r), r <= 1  ->  u* = 1 at r = 1.
  ConicProblem prob("exp_toy");
  ScalarVar u = prob.add_free("u");
  ScalarVar r = prob.add_free("r");
  prob.add_exp(M_LN2 * LinExpr::variable(u.index), LinExpr(1.0),
               LinExpr(1.0) + LinExpr::variable(r.index), "u_le_log");
  prob.add_linear_ge0(LinExpr(1.0) - LinExpr::variable(r.index), "r_le_1");
  prob.set_objective_max(LinExpr::variable(u.index));
  const ConicSolution sol = solve(prob);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective_value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("solve: second-order cone") {
  // max x s.t. ||(x, 1)|| <= 2  ->  x* = sqrt(3).
  ConicProblem prob("soc_toy");
  ScalarVar x = prob.add_free("x");
  prob.add_soc(LinExpr(2.0), {LinExpr::variable(x.index), LinExpr(1.0)}, "ball");
  prob.set_objective_max(LinExpr::variable(x.index));
  const ConicSolution sol = solve(prob);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective_value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-7));
}

TEST_CASE("solve: nonnegative variable cone is enforced") {
  // max -y s.t. y >= 3 with y declared nonnegative.
  ConicProblem prob("nonneg");
  ScalarVar y = prob.add_nonneg("y");
  prob.add_linear_ge0(LinExpr::variable(y.index) - LinExpr(3.0), "y_ge_3");
  prob.set_objective_max(-LinExpr::variable(y.index));
  const ConicSolution sol = solve(prob);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective_value == doctest::Approx(-3.0).epsilon(1e-7));
}

TEST_CASE("solve is deterministic") {
  auto build = []() {
    ConicProblem prob("det");
    HermitianVar X = prob.add_hermitian("X", 2);
    CAffineMatrix shifted = X.expr();
    shifted += CAffineMatrix::constant(
        -Eigen::MatrixXcd::Identity(2, 2) * std::complex<double>(0.5, 0.0));
    prob.add_hermitian_lmi(shifted, "X_minus_half");
    LinExpr obj;
    for (int i = 0; i < 2; ++i) obj -= LinExpr::variable(X.offset + i);
    prob.set_objective_max(obj);
    return prob;
  };
  const ConicSolution a = solve(build());
  const ConicSolution b = solve(build());
  REQUIRE(a.status == SolveStatus::optimal);
  REQUIRE(b.status == SolveStatus::optimal);
  CHECK((a.x - b.x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("max_violation flags broken assignments") {
  ConicProblem prob("viol");
  ScalarVar x = prob.add_nonneg("x");
  prob.add_linear_ge0(LinExpr(1.0) - LinExpr::variable(x.index), "x_le_1");
  prob.add_soc(LinExpr::variable(x.index), {LinExpr(0.5)}, "soc");
  Eigen::VectorXd ok(1), bad(1);
  ok << 0.7;
  bad << -2.0;
  CHECK(prob.max_violation(ok) == doctest::Approx(0.0));
  CHECK(prob.max_violation(bad) > 1.0);
}

TEST_CASE("problem dump is self-describing") {
  ConicProblem prob("dump_demo");
  ScalarVar x = prob.add_free("x");
  prob.add_linear_ge0(LinExpr(2.0) - LinExpr::variable(x.index), "cap");
  prob.set_objective_max(LinExpr::variable(x.index));
  const std::string text = prob.dump();
  CHECK(text.find("problem dump_demo") != std::string::npos);
  CHECK(text.find("linear_ge0 cap") != std::string::npos);
  CHECK(text.find("objective max") != std::string::npos);
}
