#pragma once

#include <Eigen/Dense>

#include "isacbeam/config.hpp"

namespace isacbeam {

// Half-wavelength uniform linear array, phase reference at element 0:
// entry m of a(theta) is exp(i*pi*m*sin(theta)).
Eigen::VectorXcd steering_vector(double theta, int M);

// Exact derivative of steering_vector with respect to theta.
Eigen::VectorXcd steering_derivative(double theta, int M);

// Transmit/sensing array responses toward the target plus the response
// matrix A = b a^H and its angular derivative.
struct SteeringContext {
  Eigen::VectorXcd a;      // transmit steering, length M_t
  Eigen::VectorXcd b;      // sensing steering, length M_r
  Eigen::VectorXcd a_dot;
  Eigen::VectorXcd b_dot;
  Eigen::MatrixXcd A;      // b a^H, M_r x M_t
  Eigen::MatrixXcd A_dot;  // b_dot a^H + b a_dot^H
  double theta = 0.0;
};

SteeringContext build_steering_context(const SystemConfig& cfg);
SteeringContext build_steering_context(double theta, int M_t, int M_r);

}  // namespace isacbeam
