#pragma once

#include <string>
#include <utility>
#include <vector>

#include "isacbeam/channel.hpp"
#include "isacbeam/config.hpp"
#include "isacbeam/metrics.hpp"
#include "isacbeam/optimizer.hpp"
#include "isacbeam/rng.hpp"

namespace isacbeam {

// Aggregated post-run audit: numerical rank-1 certificate, Monte Carlo
// robustness over the error ball, CRB and power checks.
struct VerificationReport {
  std::vector<double> rank_ratios;      // per-user lambda2/lambda1 of W_k
  std::vector<double> robust_sinr_min;  // worst sampled SINR per user
  double robust_eq15_min = 0.0;  // worst slack of the signal inequality
  double robust_eq16_max = 0.0;  // worst slack of the interference inequality
  double crb_value = 0.0;        // radians^2
  bool crb_ok = false;
  bool power_ok = false;
  bool sinr_ok = false;
  int samples_used = 0;
};

// lambda2/lambda1 with eigenvalues sorted descending; throws on a zero matrix.
double rank_one_ratio(const Eigen::MatrixXcd& W);

// Per-user worst SINR over sampled errors (Delta = 0 probed first, then an
// even interior/boundary split).
Eigen::VectorXd robust_sinr_check(const BeamformerSet& beams,
                                  const ChannelSet& channels,
                                  const SystemConfig& cfg, int n_samples,
                                  Rng& rng);

struct QuadraticSlacks {
  double eq15_min = 0.0;  // min over samples of z^H (H W H^H) z - eps
  double eq16_max = 0.0;  // max over samples of z^H (H Lam H^H + s2 I) z - v
};

// Slack audit of the two robust quadratic inequalities for one user.
QuadraticSlacks quadratic_robustness_check(
    const Eigen::MatrixXcd& W, const Eigen::MatrixXcd& Lambda,
    const Eigen::VectorXcd& z, double eps, double v,
    const Eigen::MatrixXcd& H_hat, double phi, double sigma_m2, int n_samples,
    Rng& rng);

// (CRB value, value <= rho within 1e-6 relative slack).
std::pair<double, bool> crb_audit(const BeamformerSet& beams,
                                  const SteeringContext& ctx,
                                  const SystemConfig& cfg);

// Requires run.status == converged.
VerificationReport full_report(const RunResult& run, const ChannelSet& channels,
                               const SystemConfig& cfg, Rng& rng,
                               int n_samples = 10000);

std::string report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const std::string& text);

}  // namespace isacbeam
