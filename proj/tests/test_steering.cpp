#include <cmath>

#include "doctest.h"
#include "isacbeam/steering.hpp"

using namespace isacbeam;

namespace {
const double kPi = M_PI;
}

TEST_CASE("steering vector reference values") {
  const auto broadside = steering_vector(0.0, 4);
  for (int m = 0; m < 4; ++m) {
    CHECK(broadside(m).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(broadside(m).imag() == doctest::Approx(0.0).epsilon(1e-15));
  }

  const auto endfire = steering_vector(kPi / 2.0, 2);
  CHECK(endfire(0).real() == doctest::Approx(1.0));
  CHECK(endfire(1).real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(endfire(1).imag() == doctest::Approx(0.0).epsilon(1e-12));

  const auto v = steering_vector(kPi / 3.0, 3);
  const double s = std::sin(kPi / 3.0);
  for (int m = 0; m < 3; ++m) {
    CHECK(v(m).real() == doctest::Approx(std::cos(kPi * m * s)).epsilon(1e-14));
    CHECK(v(m).imag() == doctest::Approx(std::sin(kPi * m * s)).epsilon(1e-14));
  }
}

TEST_CASE("steering entries are unit modulus") {
  for (double theta : {-1.2, -0.3, 0.0, 0.7, 1.4}) {
    const auto v = steering_vector(theta, 8);
    for (int m = 0; m < 8; ++m)
      CHECK(std::abs(v(m)) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("steering conjugate symmetry in theta") {
  for (double theta : {0.1, 0.9, 1.3}) {
    const auto plus = steering_vector(theta, 6);
    const auto minus = steering_vector(-theta, 6);
    for (int m = 0; m < 6; ++m) {
      CHECK(minus(m).real() == doctest::Approx(plus(m).real()).epsilon(1e-14));
      CHECK(minus(m).imag() == doctest::Approx(-plus(m).imag()).epsilon(1e-14));
    }
  }
}

TEST_CASE("steering derivative reference values") {
  const auto d0 = steering_derivative(0.0, 3);
  CHECK(std::abs(d0(0)) == doctest::Approx(0.0));
  CHECK(d0(1).imag() == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(d0(1).real() == doctest::Approx(0.0));
  CHECK(d0(2).imag() == doctest::Approx(2.0 * kPi).epsilon(1e-14));

  const auto d90 = steering_derivative(kPi / 2.0, 5);
  for (int m = 0; m < 5; ++m) CHECK(std::abs(d90(m)) < 1e-12);
}

TEST_CASE("steering derivative matches central finite differences") {
  const double h = 1e-6;
  for (double theta : {0.2, 0.8, 1.0471975511965976}) {
    for (int M : {2, 5, 9}) {
      const auto d = steering_derivative(theta, M);
      const auto fd =
          ((steering_vector(theta + h, M) - steering_vector(theta - h, M)) /
           (2.0 * h))
              .eval();
      for (int m = 0; m < M; ++m) {
        const double scale = std::max(1.0, std::abs(d(m)));
        CHECK(std::abs(d(m) - fd(m)) / scale < 1e-6);
      }
    }
  }
}

TEST_CASE("steering context invariants") {
  SystemConfig cfg = default_config();
  const SteeringContext ctx = build_steering_context(cfg);
  CHECK(ctx.A.rows() == cfg.M_r);
  CHECK(ctx.A.cols() == cfg.M_t);

  // A = b a^H exactly.
  const Eigen::MatrixXcd outer = ctx.b * ctx.a.adjoint();
  CHECK((ctx.A - outer).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  // rank(A) = 1: second singular value vanishes.
  const auto sv = ctx.A.jacobiSvd().singularValues();
  CHECK(sv(1) < 1e-12 * sv(0));

  // A_dot matches finite differences of A.
  const double h = 1e-6;
  const SteeringContext lo = build_steering_context(cfg.theta - h, cfg.M_t, cfg.M_r);
  const SteeringContext hi = build_steering_context(cfg.theta + h, cfg.M_t, cfg.M_r);
  const Eigen::MatrixXcd fd = (hi.A - lo.A) / (2.0 * h);
  const double scale = ctx.A_dot.cwiseAbs().maxCoeff();
  CHECK((ctx.A_dot - fd).cwiseAbs().maxCoeff() / scale < 1e-6);
}

TEST_CASE("steering context at broadside is the all-ones outer product") {
  const SteeringContext ctx = build_steering_context(0.0, 2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      CHECK(ctx.A(r, c).real() == doctest::Approx(1.0));
      CHECK(ctx.A(r, c).imag() == doctest::Approx(0.0));
    }
}
