#include "isacbeam/metrics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace isacbeam {

namespace {

// Interference-plus-noise covariance at user k: sigma^2 I + sum_{i != k} H W_i H^H.
Eigen::MatrixXcd interference_covariance(const Eigen::MatrixXcd& H_k,
                                         const std::vector<Eigen::MatrixXcd>& W,
                                         int k, double sigma_m2) {
  const int N = static_cast<int>(H_k.rows());
  Eigen::MatrixXcd M = sigma_m2 * Eigen::MatrixXcd::Identity(N, N);
  for (int i = 0; i < static_cast<int>(W.size()); ++i) {
    if (i == k) continue;
    M += H_k * W[i] * H_k.adjoint();
  }
  return M;
}

}  // namespace

Eigen::MatrixXcd BeamformerSet::R_x() const {
  if (W.empty()) return {};
  Eigen::MatrixXcd sum = W[0];
  for (std::size_t k = 1; k < W.size(); ++k) sum += W[k];
  return sum;
}

void BeamformerSet::validate() const {
  for (std::size_t k = 0; k < W.size(); ++k) {
    const auto& Wk = W[k];
    if (Wk.rows() != Wk.cols())
      throw std::invalid_argument("BeamformerSet: W_k must be square");
    if ((Wk - Wk.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("BeamformerSet: W_k must be Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Wk, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8)
      throw std::invalid_argument("BeamformerSet: W_k must be PSD");
  }
  if (!w.empty()) {
    if (w.size() != W.size())
      throw std::invalid_argument("BeamformerSet: w/W size mismatch");
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k].squaredNorm() > W[k].real().trace() + 1e-8)
        throw std::invalid_argument("BeamformerSet: ||w_k||^2 exceeds tr(W_k)");
    }
  }
}

double sinr(const Eigen::MatrixXcd& H_k, const BeamformerSet& beams, int k,
            double sigma_m2) {
  const Eigen::MatrixXcd cov =
      interference_covariance(H_k, beams.W, k, sigma_m2);
  const Eigen::VectorXcd g = H_k * beams.w.at(static_cast<std::size_t>(k));
  return std::real(g.dot(cov.llt().solve(g)));
}

double rate(double sinr_value) { return std::log2(1.0 + sinr_value); }

double system_ee(const Eigen::VectorXd& rates, const BeamformerSet& beams,
                 const SystemConfig& cfg) {
  double ee = 0.0;
  for (int k = 0; k < cfg.K; ++k) {
    const double P_k = beams.W[k].real().trace() + cfg.fixed_power_share();
    ee += cfg.f[k] * rates(k) / P_k;
  }
  return ee;
}

double crb_theta(const SteeringContext& ctx, const Eigen::MatrixXcd& R_x,
                 std::complex<double> alpha, int L, double sigma_s2) {
  const Eigen::MatrixXcd AA = ctx.A.adjoint() * ctx.A;
  const Eigen::MatrixXcd DD = ctx.A_dot.adjoint() * ctx.A_dot;
  const Eigen::MatrixXcd DA = ctx.A_dot.adjoint() * ctx.A;
  const double tr_aa = std::real((AA * R_x).trace());
  const double tr_dd = std::real((DD * R_x).trace());
  const std::complex<double> tr_da = (DA * R_x).trace();
  const double denom_core = tr_dd * tr_aa - std::norm(tr_da);
  const double denom = 2.0 * std::norm(alpha) * L * denom_core;
  if (!(denom > 0.0))
    throw UnidentifiableGeometryError("crb_theta: covariance carries no angle information");
  return sigma_s2 * tr_aa / denom;
}

double fp_rate(const Eigen::MatrixXcd& H_k, const BeamformerSet& beams, int k,
               const Eigen::VectorXcd& z_k, double sigma_m2) {
  const auto& W_k = beams.W.at(static_cast<std::size_t>(k));
  const Eigen::VectorXcd HHz = H_k.adjoint() * z_k;
  const double signal = std::max(0.0, std::real(HHz.dot(W_k * HHz)));
  const Eigen::MatrixXcd cov =
      interference_covariance(H_k, beams.W, k, sigma_m2);
  const double penalty = std::real(z_k.dot(cov * z_k));
  const double inner = std::max(0.0, 2.0 * std::sqrt(signal) - penalty);
  return std::log2(1.0 + inner);
}

double fp_objective(const Eigen::VectorXd& q, const Eigen::VectorXd& surrogate_rates,
                    const BeamformerSet& beams, const SystemConfig& cfg) {
  double obj = 0.0;
  for (int k = 0; k < cfg.K; ++k) {
    const double R_k = surrogate_rates(k);
    if (R_k < 0.0)
      throw std::invalid_argument("fp_objective: negative surrogate rate");
    const double P_k = beams.W[k].real().trace() + cfg.fixed_power_share();
    obj += cfg.f[k] * (2.0 * q(k) * std::sqrt(R_k) - q(k) * q(k) * P_k);
  }
  return obj;
}

double optimal_q(double rate_k, const Eigen::MatrixXcd& W_k, const SystemConfig& cfg) {
  return std::sqrt(rate_k) / (W_k.real().trace() + cfg.fixed_power_share());
}

Eigen::VectorXcd optimal_z_nominal(const Eigen::MatrixXcd& H_k,
                                   const BeamformerSet& beams, int k,
                                   double sigma_m2) {
  const Eigen::MatrixXcd cov =
      interference_covariance(H_k, beams.W, k, sigma_m2);
  const Eigen::VectorXcd g = H_k * beams.w.at(static_cast<std::size_t>(k));
  return cov.llt().solve(g);
}

}  // namespace isacbeam
