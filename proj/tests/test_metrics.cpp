#include <cmath>
#include <complex>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "isacbeam/channel.hpp"
#include "isacbeam/metrics.hpp"
#include "isacbeam/rng.hpp"

using namespace isacbeam;

namespace {

SystemConfig tiny_config(int K, int N, int M_t) {
  SystemConfig cfg;
  cfg.K = K;
  cfg.N = N;
  cfg.M_t = M_t;
  cfg.M_r = M_t + 2;
  cfg.f.assign(K, 1.0 / K);
  cfg.zeta.assign(K, 0.0);
  return cfg;
}

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

// Independent CRB oracle: Fisher information for (theta, Re alpha, Im alpha)
// from the mean derivatives of the vectorized noiseless echo over L
// snapshots with sample covariance R_x, inverted, (theta, theta) entry.
double crb_fim_oracle(const SteeringContext& ctx, const Eigen::MatrixXcd& R_x,
                      std::complex<double> alpha, int L, double sigma_s2) {
  const int M_t = static_cast<int>(R_x.rows());
  // X with X X^H = L R_x.
  Eigen::LLT<Eigen::MatrixXcd> llt(R_x +
                                   1e-14 * Eigen::MatrixXcd::Identity(M_t, M_t));
  const Eigen::MatrixXcd C = llt.matrixL();
  Eigen::MatrixXcd X = std::sqrt(static_cast<double>(L)) * C *
                       Eigen::MatrixXcd::Identity(M_t, L);

  const Eigen::MatrixXcd d_theta = alpha * ctx.A_dot * X;
  const Eigen::MatrixXcd d_re = ctx.A * X;
  const Eigen::MatrixXcd d_im = std::complex<double>(0.0, 1.0) * ctx.A * X;

  const auto inner = [](const Eigen::MatrixXcd& P, const Eigen::MatrixXcd& Q) {
    return (P.adjoint() * Q).trace();
  };
  Eigen::Matrix3d fim;
  const Eigen::MatrixXcd blocks[3] = {d_theta, d_re, d_im};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      fim(i, j) = 2.0 / sigma_s2 * std::real(inner(blocks[i], blocks[j]));
  return fim.inverse()(0, 0);
}

}  // namespace

TEST_CASE("sinr closed-form reference cases") {
  SUBCASE("single user") {
    BeamformerSet beams;
    beams.w = {Eigen::VectorXcd::Ones(1)};
    beams.W = {Eigen::MatrixXcd::Ones(1, 1)};
    Eigen::MatrixXcd H(1, 1);
    H << 2.0;
    CHECK(sinr(H, beams, 0, 1.0) == doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("two users sharing a scalar channel") {
    BeamformerSet beams;
    beams.w = {Eigen::VectorXcd::Ones(1), Eigen::VectorXcd::Ones(1)};
    beams.W = {Eigen::MatrixXcd::Ones(1, 1), Eigen::MatrixXcd::Ones(1, 1)};
    Eigen::MatrixXcd H(1, 1);
    H << 1.0;
    CHECK(sinr(H, beams, 0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("sinr equals the best-combiner generalized eigenvalue") {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const int N = 3, M_t = 5, K = 3;
    BeamformerSet beams;
    for (int k = 0; k < K; ++k) {
      beams.w.push_back(random_vector(M_t, rng) * 0.4);
      beams.W.push_back(beams.w.back() * beams.w.back().adjoint());
    }
    const Eigen::MatrixXcd H = random_matrix(N, M_t, rng);
    const double sigma2 = 0.3;

    Eigen::MatrixXcd cov = sigma2 * Eigen::MatrixXcd::Identity(N, N);
    for (int i = 1; i < K; ++i) cov += H * beams.W[i] * H.adjoint();
    const Eigen::VectorXcd g = H * beams.w[0];
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(
        g * g.adjoint(), cov);
    const double oracle = ges.eigenvalues().maxCoeff();

    CHECK(sinr(H, beams, 0, sigma2) == doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("sinr is invariant to a global phase on w_k") {
  Rng rng(32);
  BeamformerSet beams;
  beams.w = {random_vector(4, rng), random_vector(4, rng)};
  beams.W = {beams.w[0] * beams.w[0].adjoint(), beams.w[1] * beams.w[1].adjoint()};
  const Eigen::MatrixXcd H = random_matrix(2, 4, rng);
  const double base = sinr(H, beams, 0, 0.5);
  beams.w[0] *= std::polar(1.0, 1.234);
  CHECK(sinr(H, beams, 0, 0.5) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("rate reference points") {
  CHECK(rate(0.0) == doctest::Approx(0.0));
  CHECK(rate(1.0) == doctest::Approx(1.0));
  CHECK(rate(3.0) == doctest::Approx(2.0));
}

TEST_CASE("system_ee reference cases") {
  SUBCASE("single user") {
    SystemConfig cfg = tiny_config(1, 1, 2);
    cfg.P_0 = 0.0;  // metric-level case; bypasses validate on purpose
    BeamformerSet beams;
    beams.W = {0.5 * Eigen::MatrixXcd::Identity(1, 1)};
    Eigen::VectorXd rates(1);
    rates << 2.0;
    CHECK(system_ee(rates, beams, cfg) == doctest::Approx(4.0));
  }
  SUBCASE("zero rates give zero EE") {
    SystemConfig cfg = tiny_config(2, 1, 2);
    BeamformerSet beams;
    beams.W = {Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(2, 2)};
    CHECK(system_ee(Eigen::VectorXd::Zero(2), beams, cfg) == doctest::Approx(0.0));
  }
  SUBCASE("weighted sum") {
    SystemConfig cfg = tiny_config(2, 1, 2);
    cfg.P_0 = 1.0;  // per-user share 0.5
    BeamformerSet beams;
    beams.W = {0.25 * Eigen::MatrixXcd::Identity(2, 2),
               0.25 * Eigen::MatrixXcd::Identity(2, 2)};
    Eigen::VectorXd rates(2);
    rates << 1.0, 1.0;  // denominators 0.5 + 0.5 = 1
    CHECK(system_ee(rates, beams, cfg) == doctest::Approx(1.0));
  }
}

TEST_CASE("crb_theta reference scaling behavior") {
  const SteeringContext ctx = build_steering_context(M_PI / 3.0, 4, 6);
  const double P = 0.1258925;
  const Eigen::MatrixXcd R = (P / 4.0) * Eigen::MatrixXcd::Identity(4, 4);
  const double base = crb_theta(ctx, R, {1.0, 0.0}, 30, 1.0);
  CHECK(base > 0.0);

  SUBCASE("scaling R_x by c scales CRB by 1/c") {
    const double scaled = crb_theta(ctx, 2.0 * R, {1.0, 0.0}, 30, 1.0);
    CHECK(scaled == doctest::Approx(base / 2.0).epsilon(1e-12));
  }
  SUBCASE("doubling L halves CRB") {
    const double scaled = crb_theta(ctx, R, {1.0, 0.0}, 60, 1.0);
    CHECK(scaled == doctest::Approx(base / 2.0).epsilon(1e-12));
  }
  SUBCASE("joint noise/alpha scaling invariance") {
    const double c = 3.7;
    const double scaled =
        crb_theta(ctx, R, std::sqrt(c) * std::complex<double>(1.0, 0.0), 30, c);
    CHECK(scaled == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("crb_theta matches the FIM-inversion oracle") {
  SUBCASE("reference instance") {
    const SteeringContext ctx = build_steering_context(M_PI / 3.0, 4, 6);
    const Eigen::MatrixXcd R =
        (0.1258925 / 4.0) * Eigen::MatrixXcd::Identity(4, 4);
    const double closed = crb_theta(ctx, R, {1.0, 0.0}, 30, 1.0);
    const double oracle = crb_fim_oracle(ctx, R, {1.0, 0.0}, 30, 1.0);
    CHECK(closed == doctest::Approx(oracle).epsilon(1e-8));
  }
  SUBCASE("random instances") {
    Rng rng(63);
    for (int trial = 0; trial < 30; ++trial) {
      const int M_t = 3 + static_cast<int>(rng.uniform() * 4);  // 3..6
      const int M_r = M_t + 2;
      const double theta = (rng.uniform() - 0.5) * 2.5;
      const int L = M_t + 1 + static_cast<int>(rng.uniform() * 40);
      const SteeringContext ctx = build_steering_context(theta, M_t, M_r);
      Eigen::MatrixXcd G = random_matrix(M_t, M_t, rng);
      Eigen::MatrixXcd R = 0.05 * (G * G.adjoint());
      const std::complex<double> alpha = std::polar(1.0, 2.0 * rng.uniform());
      const double closed = crb_theta(ctx, R, alpha, L, 1.3);
      const double oracle = crb_fim_oracle(ctx, R, alpha, L, 1.3);
      CHECK(closed == doctest::Approx(oracle).epsilon(1e-8));
    }
  }
}

TEST_CASE("crb_theta rejects information-free covariance") {
  const SteeringContext ctx = build_steering_context(0.9, 4, 6);
  const Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(4, 4);
  CHECK_THROWS_AS(crb_theta(ctx, R, {1.0, 0.0}, 30, 1.0),
                  UnidentifiableGeometryError);
}

TEST_CASE("fp_rate basics and tightness") {
  Rng rng(71);
  SUBCASE("zero combiner gives zero") {
    BeamformerSet beams;
    beams.w = {random_vector(4, rng)};
    beams.W = {beams.w[0] * beams.w[0].adjoint()};
    const Eigen::MatrixXcd H = random_matrix(2, 4, rng);
    CHECK(fp_rate(H, beams, 0, Eigen::VectorXcd::Zero(2), 0.5) ==
          doctest::Approx(0.0));
  }
  SUBCASE("tight at the nominal optimal z for rank-1 W") {
    for (int trial = 0; trial < 40; ++trial) {
      const int K = 3, N = 2, M_t = 5;
      BeamformerSet beams;
      for (int k = 0; k < K; ++k) {
        beams.w.push_back(random_vector(M_t, rng) * 0.3);
        beams.W.push_back(beams.w.back() * beams.w.back().adjoint());
      }
      const Eigen::MatrixXcd H = random_matrix(N, M_t, rng);
      const double sigma2 = 0.4;
      const Eigen::VectorXcd z_star = optimal_z_nominal(H, beams, 1, sigma2);
      const double lhs = fp_rate(H, beams, 1, z_star, sigma2);
      const double rhs = rate(sinr(H, beams, 1, sigma2));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
  }
  SUBCASE("lower bound for arbitrary z") {
    for (int trial = 0; trial < 40; ++trial) {
      const int K = 2, N = 3, M_t = 4;
      BeamformerSet beams;
      for (int k = 0; k < K; ++k) {
        beams.w.push_back(random_vector(M_t, rng) * 0.5);
        beams.W.push_back(beams.w.back() * beams.w.back().adjoint());
      }
      const Eigen::MatrixXcd H = random_matrix(N, M_t, rng);
      const Eigen::VectorXcd z = random_vector(N, rng) * 2.0;
      CHECK(fp_rate(H, beams, 0, z, 0.2) <=
            rate(sinr(H, beams, 0, 0.2)) + 1e-8);
    }
  }
}

TEST_CASE("fp_objective identities") {
  Rng rng(81);
  SystemConfig cfg = tiny_config(2, 2, 3);
  cfg.P_0 = 0.4;
  BeamformerSet beams;
  for (int k = 0; k < 2; ++k) {
    beams.w.push_back(random_vector(3, rng) * 0.3);
    beams.W.push_back(beams.w.back() * beams.w.back().adjoint());
  }
  Eigen::VectorXd R(2);
  R << 1.7, 0.6;

  SUBCASE("at q* the quadratic transform recovers system EE exactly") {
    Eigen::VectorXd q(2);
    for (int k = 0; k < 2; ++k) q(k) = optimal_q(R(k), beams.W[k], cfg);
    const double lhs = fp_objective(q, R, beams, cfg);
    const double rhs = system_ee(R, beams, cfg);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
  SUBCASE("reference value") {
    SystemConfig c1 = tiny_config(1, 1, 2);
    c1.P_0 = 0.0;
    BeamformerSet b1;
    b1.W = {0.5 * Eigen::MatrixXcd::Identity(1, 1)};
    Eigen::VectorXd q(1), rr(1);
    q << 2.828427;
    rr << 2.0;
    CHECK(fp_objective(q, rr, b1, c1) == doctest::Approx(4.0).epsilon(1e-6));
  }
  SUBCASE("zero q gives zero") {
    CHECK(fp_objective(Eigen::VectorXd::Zero(2), R, beams, cfg) ==
          doctest::Approx(0.0));
  }
  SUBCASE("negative surrogate rate is rejected") {
    Eigen::VectorXd bad(2);
    bad << 1.0, -0.2;
    CHECK_THROWS_AS(fp_objective(Eigen::VectorXd::Ones(2), bad, beams, cfg),
                    std::invalid_argument);
  }
  SUBCASE("q* maximizes over random q") {
    Eigen::VectorXd q_star(2);
    for (int k = 0; k < 2; ++k) q_star(k) = optimal_q(R(k), beams.W[k], cfg);
    const double best = fp_objective(q_star, R, beams, cfg);
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::VectorXd q(2);
      q << 5.0 * rng.uniform(), 5.0 * rng.uniform();
      CHECK(fp_objective(q, R, beams, cfg) <= best + 1e-12);
    }
  }
}

TEST_CASE("optimal_q reference values") {
  SystemConfig cfg = tiny_config(3, 2, 4);
  cfg.P_0 = 1.0;  // share 1/3
  const Eigen::MatrixXcd W =
      (0.1 / 4.0) * Eigen::MatrixXcd::Identity(4, 4);  // trace 0.1
  CHECK(optimal_q(rate(1.0), W, cfg) ==
        doctest::Approx(1.0 / (0.1 + 1.0 / 3.0)).epsilon(1e-6));
  CHECK(optimal_q(0.0, W, cfg) == doctest::Approx(0.0));
}

TEST_CASE("optimal_z_nominal") {
  Rng rng(91);
  SUBCASE("scalar identity case") {
    BeamformerSet beams;
    beams.w = {Eigen::VectorXcd::Ones(1)};
    beams.W = {Eigen::MatrixXcd::Ones(1, 1)};
    Eigen::MatrixXcd H(1, 1);
    H << 1.0;
    const Eigen::VectorXcd z = optimal_z_nominal(H, beams, 0, 1.0);
    CHECK(std::abs(z(0) - std::complex<double>(1.0, 0.0)) < 1e-12);
  }
  SUBCASE("zero beamformer maps to zero combiner") {
    BeamformerSet beams;
    beams.w = {Eigen::VectorXcd::Zero(3)};
    beams.W = {Eigen::MatrixXcd::Zero(3, 3)};
    const Eigen::MatrixXcd H = random_matrix(2, 3, rng);
    CHECK(optimal_z_nominal(H, beams, 0, 0.7).norm() == doctest::Approx(0.0));
  }
  SUBCASE("maximizes fp_rate against perturbations") {
    const int K = 2, N = 3, M_t = 4;
    BeamformerSet beams;
    for (int k = 0; k < K; ++k) {
      beams.w.push_back(random_vector(M_t, rng) * 0.4);
      beams.W.push_back(beams.w.back() * beams.w.back().adjoint());
    }
    const Eigen::MatrixXcd H = random_matrix(N, M_t, rng);
    const Eigen::VectorXcd z_star = optimal_z_nominal(H, beams, 0, 0.3);
    const double best = fp_rate(H, beams, 0, z_star, 0.3);
    for (int trial = 0; trial < 60; ++trial) {
      const Eigen::VectorXcd z = z_star + 0.05 * random_vector(N, rng);
      CHECK(fp_rate(H, beams, 0, z, 0.3) <= best + 1e-10);
    }
  }
}

TEST_CASE("BeamformerSet validation") {
  Rng rng(101);
  BeamformerSet beams;
  beams.w = {random_vector(3, rng)};
  beams.W = {beams.w[0] * beams.w[0].adjoint()};
  CHECK_NOTHROW(beams.validate());

  SUBCASE("non-Hermitian W rejected") {
    beams.W[0](0, 1) += std::complex<double>(0.1, 0.0);
    CHECK_THROWS_AS(beams.validate(), std::invalid_argument);
  }
  SUBCASE("indefinite W rejected") {
    beams.W[0] -= 0.5 * beams.W[0].real().trace() *
                  Eigen::MatrixXcd::Identity(3, 3);
    CHECK_THROWS_AS(beams.validate(), std::invalid_argument);
  }
  SUBCASE("w exceeding the lifted power rejected") {
    beams.w[0] *= 2.0;
    CHECK_THROWS_AS(beams.validate(), std::invalid_argument);
  }
  SUBCASE("R_x is the exact sum") {
    BeamformerSet two;
    two.W = {Eigen::MatrixXcd::Identity(2, 2), 2.0 * Eigen::MatrixXcd::Identity(2, 2)};
    CHECK((two.R_x() - 3.0 * Eigen::MatrixXcd::Identity(2, 2)).norm() == 0.0);
  }
}
