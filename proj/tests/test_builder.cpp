#include <cmath>
#include <complex>
#include <memory>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "isacbeam/builder.hpp"
#include "isacbeam/conic/solver.hpp"
#include "isacbeam/metrics.hpp"
#include "isacbeam/optimizer.hpp"
#include "isacbeam/rng.hpp"

using namespace isacbeam;
using namespace isacbeam::conic;

namespace {

Eigen::MatrixXcd random_matrix(int r, int c, Rng& rng) {
  Eigen::MatrixXcd M(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) M(i, j) = rng.cnormal();
  return M;
}

Eigen::VectorXcd random_vector(int n, Rng& rng) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.cnormal();
  return v;
}

Eigen::MatrixXcd random_psd(int n, Rng& rng, double scale = 1.0) {
  Eigen::MatrixXcd G = random_matrix(n, n, rng);
  return scale * (G * G.adjoint()) / n;
}

double min_eig(const Eigen::MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Evaluates the embedded LMI at a numeric (eps, lambda) assignment. The
// builder is fed two scalar variables so the affine structure is exercised.
struct Lmi18Harness {
  ConicProblem prob{"lmi18_harness"};
  ScalarVar eps, lambda;
  RAffineMatrix S;

  Lmi18Harness(const Eigen::MatrixXcd& W, const Eigen::VectorXcd& z,
               const Eigen::MatrixXcd& H, double phi) {
    eps = prob.add_free("eps");
    lambda = prob.add_free("lambda");
    CAffineMatrix lmi = build_sinr_lmi_18(CAffineMatrix::constant(W), z, H,
                                          LinExpr::variable(eps.index),
                                          LinExpr::variable(lambda.index), phi);
    S = embed_hermitian(lmi);
  }

  double min_eig_at(double eps_v, double lambda_v) const {
    Eigen::VectorXd x(2);
    x << eps_v, lambda_v;
    return min_eig(S.eval(x));
  }

  // Family feasibility over lambda >= 0 via a geometric scan.
  bool feasible(double eps_v) const {
    for (double lam = 1e-4; lam < 3e9; lam *= 4.0)
      if (min_eig_at(eps_v, lam) >= -1e-12) return true;
    return false;
  }
};

}  // namespace

TEST_CASE("lmi18 structural checks") {
  Rng rng(41);
  const int N = 2, M_t = 4;
  const Eigen::MatrixXcd H = random_matrix(N, M_t, rng);
  const Eigen::MatrixXcd W = random_psd(M_t, rng);
  const Eigen::VectorXcd z = random_vector(N, rng);

  SUBCASE("corner decreases linearly in eps with slope -1") {
    Lmi18Harness h(W, z, H, 0.3);
    Eigen::VectorXd x0(2), x1(2);
    x0 << 0.0, 0.7;
    x1 << 1.0, 0.7;
    const Eigen::MatrixXd S0 = h.S.eval(x0);
    const Eigen::MatrixXd S1 = h.S.eval(x1);
    const Eigen::MatrixXd diff = S1 - S0;
    CHECK(diff(M_t, M_t) == doctest::Approx(-1.0).epsilon(1e-12));
    // only the corner (and its embedded twin) moves
    CHECK(diff.cwiseAbs().sum() == doctest::Approx(2.0).epsilon(1e-12));
  }

  SUBCASE("zero data with eps=-1 gives diag(0,...,1)") {
    Lmi18Harness h(Eigen::MatrixXcd::Zero(M_t, M_t), Eigen::VectorXcd::Zero(N),
                   Eigen::MatrixXcd::Zero(N, M_t), 0.0);
    CHECK(h.min_eig_at(-1.0, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
    Eigen::VectorXd x(2);
    x << -1.0, 0.0;
    const Eigen::MatrixXd S = h.S.eval(x);
    CHECK(S(M_t, M_t) == doctest::Approx(1.0));
    CHECK(S.trace() == doctest::Approx(2.0));  // corner appears twice embedded
  }
}

TEST_CASE("lmi18 perfect-CSI feasibility matches the nominal inequality") {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const int N = 2, M_t = 4;
    const Eigen::MatrixXcd H = random_matrix(N, M_t, rng);
    const Eigen::MatrixXcd W = random_psd(M_t, rng);
    const Eigen::VectorXcd z = random_vector(N, rng);
    const Eigen::VectorXcd g = H.adjoint() * z;
    const double cap = std::real(g.dot(W * g));  // z^H Hhat W Hhat^H z

    Lmi18Harness h(W, z, H, 0.0);
    const double margin = 1e-4 * std::max(1.0, cap);
    CHECK(h.feasible(cap - margin));
    CHECK(!h.feasible(cap + margin));
  }
}

TEST_CASE("lmi19 structural and perfect-CSI checks") {
  Rng rng(47);
  const int N = 2, M_t = 4;
  const Eigen::MatrixXcd H = random_matrix(N, M_t, rng);
  const Eigen::VectorXcd z = random_vector(N, rng);
  const double sigma_m2 = 0.3;

  auto harness = [&](const Eigen::MatrixXcd& Lambda, double phi) {
    auto prob = std::make_shared<ConicProblem>("lmi19_harness");
    ScalarVar v = prob->add_free("v");
    ScalarVar lam = prob->add_free("lambda");
    CAffineMatrix lmi = build_interference_lmi_19(
        CAffineMatrix::constant(Lambda), z, H, LinExpr::variable(v.index),
        LinExpr::variable(lam.index), phi, sigma_m2);
    return std::make_pair(prob, embed_hermitian(lmi));
  };

  SUBCASE("K=1 reduction: v >= sigma^2 ||z||^2 at lambda = 0") {
    auto [prob, S] = harness(Eigen::MatrixXcd::Zero(M_t, M_t), 0.0);
    const double floor_v = sigma_m2 * z.squaredNorm();
    Eigen::VectorXd lo(2), hi(2);
    lo << floor_v - 1e-6, 0.0;
    hi << floor_v + 1e-6, 0.0;
    CHECK(min_eig(S.eval(lo)) < 0.0);
    CHECK(min_eig(S.eval(hi)) >= -1e-12);
  }

  SUBCASE("corner increases linearly in v with slope +1") {
    auto [prob, S] = harness(random_psd(M_t, rng), 0.25);
    Eigen::VectorXd x0(2), x1(2);
    x0 << 0.0, 0.4;
    x1 << 1.0, 0.4;
    const Eigen::MatrixXd diff = S.eval(x1) - S.eval(x0);
    CHECK(diff(M_t, M_t) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(diff.cwiseAbs().sum() == doctest::Approx(2.0).epsilon(1e-12));
  }

  SUBCASE("family feasibility matches v >= z^H H Lambda H^H z + sigma^2||z||^2") {
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::MatrixXcd Lambda = random_psd(M_t, rng);
      const Eigen::VectorXcd g = H.adjoint() * z;
      const double needed =
          std::real(g.dot(Lambda * g)) + sigma_m2 * z.squaredNorm();
      auto [prob, S] = harness(Lambda, 0.0);
      const double margin = 1e-4 * std::max(1.0, needed);
      auto feasible = [&](double v) {
        for (double lam = 1e-4; lam < 3e9; lam *= 4.0) {
          Eigen::VectorXd x(2);
          x << v, lam;
          if (min_eig(S.eval(x)) >= -1e-12) return true;
        }
        return false;
      };
      CHECK(feasible(needed + margin));
      CHECK(!feasible(needed - margin));
    }
  }
}

TEST_CASE("crb lmi matches the closed-form threshold") {
  Rng rng(53);
  SystemConfig cfg = default_config();
  cfg.M_t = 4;
  cfg.M_r = 6;
  const SteeringContext ctx = build_steering_context(cfg);

  ConicProblem prob("crb_harness");
  HermitianVar R = prob.add_hermitian("R", 4);

  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXcd R_num = random_psd(4, rng, 0.1);
    const double crb = crb_theta(ctx, R_num, cfg.alpha, cfg.L, cfg.sigma_s2);

    // Pack R_num into the variable layout to evaluate the affine LMI.
    Eigen::VectorXd x(prob.num_vars());
    for (int i = 0; i < 4; ++i) x(R.offset + i) = R_num(i, i).real();
    int idx = R.offset + 4;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        x(idx++) = R_num(i, j).real();
        x(idx++) = R_num(i, j).imag();
      }

    auto gamma_of = [&](double rho) {
      return cfg.sigma_s2 / (2.0 * std::norm(cfg.alpha) * cfg.L * rho);
    };
    const RAffineMatrix loose =
        embed_hermitian(build_crb_lmi_21(ctx, R.expr(), gamma_of(crb * (1 + 1e-6))));
    const RAffineMatrix tight =
        embed_hermitian(build_crb_lmi_21(ctx, R.expr(), gamma_of(crb * (1 - 1e-6))));
    CHECK(min_eig(loose.eval(x)) >= -1e-8);
    CHECK(min_eig(tight.eval(x)) < 0.0);
  }

  SUBCASE("zero covariance is infeasible with top-left -Gamma") {
    const CAffineMatrix lmi = build_crb_lmi_21(
        ctx, CAffineMatrix::constant(Eigen::MatrixXcd::Zero(4, 4)), 17.5);
    Eigen::VectorXd empty(0);
    CHECK(lmi.at(0, 0).eval(empty).real() == doctest::Approx(-17.5));
    CHECK(std::abs(lmi.at(0, 1).eval(empty)) == doctest::Approx(0.0));
  }

  SUBCASE("entries except -Gamma are linear in R") {
    const double Gamma = 3.0;
    const CAffineMatrix one =
        build_crb_lmi_21(ctx, CAffineMatrix::constant(Eigen::MatrixXcd::Identity(4, 4)), Gamma);
    const CAffineMatrix two = build_crb_lmi_21(
        ctx, CAffineMatrix::constant(2.0 * Eigen::MatrixXcd::Identity(4, 4)), Gamma);
    Eigen::VectorXd empty(0);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        const std::complex<double> v1 = one.at(r, c).eval(empty);
        const std::complex<double> v2 = two.at(r, c).eval(empty);
        const double gamma_part = (r == 0 && c == 0) ? Gamma : 0.0;
        CHECK(std::abs(v2 + gamma_part - 2.0 * (v1 + gamma_part)) < 1e-9);
      }
  }
}

namespace {

SystemConfig small_scenario() {
  SystemConfig cfg;
  cfg.K = 2;
  cfg.N = 2;
  cfg.M_t = 4;
  cfg.M_r = 6;
  cfg.f = {0.5, 0.5};
  cfg.zeta = {0.01, 0.01};
  cfg.phi = 0.2;
  cfg.rho = std::numeric_limits<double>::infinity();  // focus on the robust part
  return cfg;
}

}  // namespace

TEST_CASE("build_p3 dimension layout") {
  SystemConfig cfg = default_config();
  cfg.M_t = 6;
  cfg.M_r = 8;
  Rng rng(3);
  const ChannelSet ch = generate_channels(cfg, rng);
  const FPState st = initialize(cfg, ch);
  const P3Problem p3 = build_p3(cfg, ch, st.q, st.z);

  // 3 PSD blocks of real dimension 12, 6 robust LMIs of dimension 14, one
  // CRB LMI of dimension 4.
  int d12 = 0, d14 = 0, d4 = 0;
  for (const auto& lmi : p3.problem.lmi_cons()) {
    if (lmi.S.rows() == 12) ++d12;
    if (lmi.S.rows() == 14) ++d14;
    if (lmi.S.rows() == 4) ++d4;
  }
  CHECK(d12 == 3);
  CHECK(d14 == 6);
  CHECK(d4 == 1);
  CHECK(p3.problem.lmi_cons().size() == 10);
  CHECK(p3.problem.soc_cons().size() == 6);
  CHECK(p3.problem.exp_cons().size() == 3);
}

TEST_CASE("build_p3 assembly is deterministic") {
  SystemConfig cfg = small_scenario();
  Rng rng(5);
  const ChannelSet ch = generate_channels(cfg, rng);
  const FPState st = initialize(cfg, ch);
  const P3Problem a = build_p3(cfg, ch, st.q, st.z);
  const P3Problem b = build_p3(cfg, ch, st.q, st.z);
  CHECK(a.problem.dump() == b.problem.dump());
}

TEST_CASE("p3 solve: feasible robust instance satisfies all cones") {
  SystemConfig cfg = small_scenario();
  Rng rng(7);
  const ChannelSet ch = generate_channels(cfg, rng);
  const FPState st = initialize(cfg, ch);
  P3Problem p3 = build_p3(cfg, ch, st.q, st.z);
  const ConicSolution sol = solve(p3.problem);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(p3.problem.max_violation(sol.x) <= 1e-7);

  for (int k = 0; k < cfg.K; ++k) {
    const double r = sol.x(p3.r[k].index);
    const double eps = sol.x(p3.eps[k].index);
    const double v = sol.x(p3.v[k].index);
    CHECK(r >= cfg.zeta[k] - 1e-8);
    CHECK(r + v > 0.0);                      // SOC branch assumption
    CHECK((r + v) * (r + v) <= 4 * eps + 1e-6);
    const Eigen::MatrixXcd W = p3.W[k].value(sol.x);
    CHECK(W.real().trace() <= cfg.P_max + 1e-7);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(W, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("p3 infeasible when the SINR floor contradicts the power cap") {
  SystemConfig cfg = small_scenario();
  cfg.zeta = {1e9, 1e9};
  Rng rng(9);
  const ChannelSet ch = generate_channels(cfg, rng);
  FPState st = initialize(cfg, ch);
  P3Problem p3 = build_p3(cfg, ch, st.q, st.z);
  const ConicSolution sol = solve(p3.problem);
  CHECK(sol.status == SolveStatus::infeasible);

  // The elastic probe points at the SINR-floor family (moderate scale so
  // the probe itself stays well-conditioned).
  cfg.zeta = {100.0, 100.0};
  P3Elastic elastic = build_p3_elastic(cfg, ch, st.q, st.z);
  const ConicSolution esol = solve(elastic.problem);
  REQUIRE(esol.status == SolveStatus::optimal);
  CHECK(esol.x(elastic.slack_sinr.index) > 1.0);
  CHECK(esol.x(elastic.slack_power.index) < 1e-4);
}

TEST_CASE("p5 reference behavior") {
  SystemConfig cfg = small_scenario();
  Rng rng(11);
  const Eigen::MatrixXcd H = random_matrix(cfg.N, cfg.M_t, rng);
  const Eigen::VectorXcd w = 0.3 * random_vector(cfg.M_t, rng);

  SUBCASE("perfect CSI: the cap binds, t* = r_k") {
    const double r_k = 1.7;
    P5Problem p5 = build_p5(cfg, H, w, r_k, 0.0);
    const ConicSolution sol = solve(p5.problem);
    REQUIRE(sol.status == SolveStatus::optimal);
    CHECK(sol.objective_value == doctest::Approx(r_k).epsilon(1e-6));
  }

  SUBCASE("zero beamformer pins t* at 0") {
    P5Problem p5 = build_p5(cfg, H, Eigen::VectorXcd::Zero(cfg.M_t), 0.9, 0.2);
    const ConicSolution sol = solve(p5.problem);
    REQUIRE(sol.status == SolveStatus::optimal);
    CHECK(sol.objective_value == doctest::Approx(0.0).epsilon(1e-7));
  }

  SUBCASE("solutions satisfy both LMIs") {
    P5Problem p5 = build_p5(cfg, H, w, 1.2, 0.25);
    const ConicSolution sol = solve(p5.problem);
    REQUIRE(sol.status == SolveStatus::optimal);
    CHECK(p5.problem.max_violation(sol.x) <= 1e-7);
    CHECK(sol.objective_value <= 1.2 + 1e-7);
  }
}
