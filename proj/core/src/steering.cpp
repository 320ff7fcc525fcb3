#include "isacbeam/steering.hpp"

#include <cmath>

namespace isacbeam {

Eigen::VectorXcd steering_vector(double theta, int M) {
  Eigen::VectorXcd v(M);
  const double s = std::sin(theta);
  for (int m = 0; m < M; ++m) {
    const double phase = M_PI * m * s;
    v(m) = {std::cos(phase), std::sin(phase)};
  }
  return v;
}

Eigen::VectorXcd steering_derivative(double theta, int M) {
  Eigen::VectorXcd v = steering_vector(theta, M);
  const double c = std::cos(theta);
  for (int m = 0; m < M; ++m) {
    v(m) *= std::complex<double>(0.0, M_PI * m * c);
  }
  return v;
}

SteeringContext build_steering_context(double theta, int M_t, int M_r) {
  SteeringContext ctx;
  ctx.theta = theta;
  ctx.a = steering_vector(theta, M_t);
  ctx.b = steering_vector(theta, M_r);
  ctx.a_dot = steering_derivative(theta, M_t);
  ctx.b_dot = steering_derivative(theta, M_r);
  ctx.A = ctx.b * ctx.a.adjoint();
  ctx.A_dot = ctx.b_dot * ctx.a.adjoint() + ctx.b * ctx.a_dot.adjoint();
  return ctx;
}

SteeringContext build_steering_context(const SystemConfig& cfg) {
  return build_steering_context(cfg.theta, cfg.M_t, cfg.M_r);
}

}  // namespace isacbeam
