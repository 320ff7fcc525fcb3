#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "isacbeam/config.hpp"
#include "isacbeam/steering.hpp"

namespace isacbeam {

// Raised when the transmit covariance carries no angular information and the
// CRB denominator is nonpositive.
struct UnidentifiableGeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lifted per-user beamformers W_k (PSD, watts) plus the extracted rank-1
// vectors w_k once available.
struct BeamformerSet {
  std::vector<Eigen::MatrixXcd> W;  // K matrices, M_t x M_t
  std::vector<Eigen::VectorXcd> w;  // empty until extraction

  Eigen::MatrixXcd R_x() const;     // sum of W_k
  bool has_vectors() const { return !w.empty(); }
  // Hermitian/PSD/trace-consistency checks; throws std::invalid_argument.
  void validate() const;
};

// Eq-level metrics. All SINRs are linear, rates in bits/s/Hz, EE in
// normalized bits/joule.

double sinr(const Eigen::MatrixXcd& H_k, const BeamformerSet& beams, int k,
            double sigma_m2);

double rate(double sinr_value);

double system_ee(const Eigen::VectorXd& rates, const BeamformerSet& beams,
                 const SystemConfig& cfg);

double crb_theta(const SteeringContext& ctx, const Eigen::MatrixXcd& R_x,
                 std::complex<double> alpha, int L, double sigma_s2);

// Quadratic-transform surrogate rate at a fixed combiner z_k; the inner
// expression is clamped at 0 before the log so the surrogate stays a valid
// lower bound for any z.
double fp_rate(const Eigen::MatrixXcd& H_k, const BeamformerSet& beams, int k,
               const Eigen::VectorXcd& z_k, double sigma_m2);

// Weighted fractional-programming objective sum_k f_k (2 q_k sqrt(R_k) -
// q_k^2 P_k) with P_k = tr(W_k) + P_0/K.
double fp_objective(const Eigen::VectorXd& q, const Eigen::VectorXd& surrogate_rates,
                    const BeamformerSet& beams, const SystemConfig& cfg);

// Closed-form maximizer of the objective in q for a fixed beamformer.
double optimal_q(double rate_k, const Eigen::MatrixXcd& W_k, const SystemConfig& cfg);

// Closed-form maximizer of the surrogate rate in z (MMSE-style combiner).
Eigen::VectorXcd optimal_z_nominal(const Eigen::MatrixXcd& H_k,
                                   const BeamformerSet& beams, int k,
                                   double sigma_m2);

}  // namespace isacbeam
