#pragma once

#include <vector>

#include "isacbeam/channel.hpp"
#include "isacbeam/config.hpp"
#include "isacbeam/conic/problem.hpp"
#include "isacbeam/steering.hpp"

namespace isacbeam {

// Robust SINR numerator LMI: for fixed z_k the block
//   [ W_k + lambda1 I        W_k Hhat^H z_k                  ]
//   [ (W_k Hhat^H z_k)^H     z^H Hhat W_k Hhat^H z - eps
//                            - lambda1 phi^2 ||z||^2         ]
// is affine in (W_k, eps_k, lambda1_k) and PSD iff the S-procedure
// certificate holds.
conic::CAffineMatrix build_sinr_lmi_18(const conic::CAffineMatrix& W_k,
                                       const Eigen::VectorXcd& z_k,
                                       const Eigen::MatrixXcd& H_hat_k,
                                       const conic::LinExpr& eps_k,
                                       const conic::LinExpr& lambda_1k,
                                       double phi);

// Robust interference LMI over Lambda_k = sum_{i != k} W_i.
conic::CAffineMatrix build_interference_lmi_19(const conic::CAffineMatrix& Lambda_k,
                                               const Eigen::VectorXcd& z_k,
                                               const Eigen::MatrixXcd& H_hat_k,
                                               const conic::LinExpr& v_k,
                                               const conic::LinExpr& lambda_2k,
                                               double phi, double sigma_m2);

// Schur-complement form of the CRB cap: 2x2 Hermitian, affine in R_x.
// Entries are divided by Gamma to keep coefficients near unit scale.
conic::CAffineMatrix build_crb_lmi_21(const SteeringContext& ctx,
                                      const conic::CAffineMatrix& R_x,
                                      double Gamma);

// The inner convex program solved once per outer iteration at fixed (q, z).
struct P3Problem {
  conic::ConicProblem problem{"P3"};
  std::vector<conic::HermitianVar> W;
  std::vector<conic::ScalarVar> r, eps, v, lambda1, lambda2;
  std::vector<conic::ScalarVar> s, u;  // epigraph: s^2 <= u <= log2(1+r)
};

P3Problem build_p3(const SystemConfig& cfg, const ChannelSet& channels,
                   const Eigen::VectorXd& q,
                   const std::vector<Eigen::VectorXcd>& z);

// Elastic copy of P3: minimizes nonnegative slacks on the power, SINR-floor,
// robust-LMI and CRB families to locate which family blocks feasibility.
struct P3Elastic {
  conic::ConicProblem problem{"P3-elastic"};
  conic::ScalarVar slack_power, slack_sinr, slack_robust, slack_crb;
};

P3Elastic build_p3_elastic(const SystemConfig& cfg, const ChannelSet& channels,
                           const Eigen::VectorXd& q,
                           const std::vector<Eigen::VectorXcd>& z);

// Per-user combiner update program (P5): max t over (z_k, lambda_zk, t).
struct P5Problem {
  conic::ConicProblem problem{"P5"};
  conic::ComplexVectorVar z;
  conic::ScalarVar lambda_z, t;
};

P5Problem build_p5(const SystemConfig& cfg, const Eigen::MatrixXcd& H_hat_k,
                   const Eigen::VectorXcd& w_k, double r_k, double phi_k);

}  // namespace isacbeam
