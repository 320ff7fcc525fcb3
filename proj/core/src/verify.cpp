#include "isacbeam/verify.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "json.hpp"

namespace isacbeam {

double rank_one_ratio(const Eigen::MatrixXcd& W) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(W, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  const int n = static_cast<int>(ev.size());
  const double lambda1 = ev(n - 1);
  if (!(lambda1 > 0.0))
    throw std::invalid_argument("rank_one_ratio: zero (or negative) matrix");
  const double lambda2 = (n >= 2) ? std::max(0.0, ev(n - 2)) : 0.0;
  return lambda2 / lambda1;
}

namespace {

// Delta = 0 first so the nominal point is always probed, then an even
// interior/boundary split over the remaining draws.
Eigen::MatrixXcd nth_error_sample(int idx, int N, int M_t, double phi, Rng& rng) {
  if (idx == 0) return Eigen::MatrixXcd::Zero(N, M_t);
  const ErrorMode mode = (idx % 2 == 1) ? ErrorMode::boundary : ErrorMode::interior;
  return sample_error(N, M_t, phi, mode, rng);
}

}  // namespace

Eigen::VectorXd robust_sinr_check(const BeamformerSet& beams,
                                  const ChannelSet& channels,
                                  const SystemConfig& cfg, int n_samples,
                                  Rng& rng) {
  if (n_samples < 1)
    throw std::invalid_argument("robust_sinr_check: n_samples must be >= 1");
  Eigen::VectorXd worst(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    double min_sinr = std::numeric_limits<double>::infinity();
    for (int s = 0; s < n_samples; ++s) {
      const Eigen::MatrixXcd delta =
          nth_error_sample(s, cfg.N, cfg.M_t, cfg.phi_k(k), rng);
      const double val = sinr(channels.H_hat[k] + delta, beams, k, cfg.sigma_m2);
      min_sinr = std::min(min_sinr, val);
    }
    worst(k) = min_sinr;
  }
  return worst;
}

QuadraticSlacks quadratic_robustness_check(
    const Eigen::MatrixXcd& W, const Eigen::MatrixXcd& Lambda,
    const Eigen::VectorXcd& z, double eps, double v,
    const Eigen::MatrixXcd& H_hat, double phi, double sigma_m2, int n_samples,
    Rng& rng) {
  if (n_samples < 1)
    throw std::invalid_argument("quadratic_robustness_check: n_samples must be >= 1");
  QuadraticSlacks out;
  out.eq15_min = std::numeric_limits<double>::infinity();
  out.eq16_max = -std::numeric_limits<double>::infinity();
  const int N = static_cast<int>(H_hat.rows());
  const int M_t = static_cast<int>(H_hat.cols());
  for (int s = 0; s < n_samples; ++s) {
    const Eigen::MatrixXcd H = H_hat + nth_error_sample(s, N, M_t, phi, rng);
    const Eigen::VectorXcd HHz = H.adjoint() * z;
    const double signal = std::real(HHz.dot(W * HHz));
    const double interf =
        std::real(HHz.dot(Lambda * HHz)) + sigma_m2 * z.squaredNorm();
    out.eq15_min = std::min(out.eq15_min, signal - eps);
    out.eq16_max = std::max(out.eq16_max, interf - v);
  }
  return out;
}

std::pair<double, bool> crb_audit(const BeamformerSet& beams,
                                  const SteeringContext& ctx,
                                  const SystemConfig& cfg) {
  double value = std::numeric_limits<double>::infinity();
  try {
    value = crb_theta(ctx, beams.R_x(), cfg.alpha, cfg.L, cfg.sigma_s2);
  } catch (const UnidentifiableGeometryError&) {
    return {value, false};
  }
  return {value, value <= cfg.rho * (1.0 + 1e-6)};
}

VerificationReport full_report(const RunResult& run, const ChannelSet& channels,
                               const SystemConfig& cfg, Rng& rng, int n_samples) {
  if (run.status != RunStatus::converged)
    throw std::invalid_argument("full_report: run did not converge");
  const FPState& st = run.state;

  VerificationReport rep;
  rep.samples_used = n_samples;
  for (int k = 0; k < cfg.K; ++k)
    rep.rank_ratios.push_back(rank_one_ratio(st.beams.W[k]));

  const Eigen::VectorXd worst =
      robust_sinr_check(st.beams, channels, cfg, n_samples, rng);
  rep.robust_sinr_min.assign(worst.data(), worst.data() + worst.size());
  rep.sinr_ok = true;
  for (int k = 0; k < cfg.K; ++k)
    rep.sinr_ok = rep.sinr_ok && worst(k) >= cfg.zeta[k] - 1e-6;

  rep.robust_eq15_min = std::numeric_limits<double>::infinity();
  rep.robust_eq16_max = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < cfg.K; ++k) {
    Eigen::MatrixXcd Lambda =
        Eigen::MatrixXcd::Zero(cfg.M_t, cfg.M_t);
    for (int i = 0; i < cfg.K; ++i)
      if (i != k) Lambda += st.beams.W[i];
    const QuadraticSlacks slacks = quadratic_robustness_check(
        st.beams.W[k], Lambda, st.z[k], st.eps(k), st.v(k), channels.H_hat[k],
        cfg.phi_k(k), cfg.sigma_m2, n_samples, rng);
    rep.robust_eq15_min = std::min(rep.robust_eq15_min, slacks.eq15_min);
    rep.robust_eq16_max = std::max(rep.robust_eq16_max, slacks.eq16_max);
  }

  const SteeringContext ctx = build_steering_context(cfg);
  const auto [crb, crb_ok] = crb_audit(st.beams, ctx, cfg);
  rep.crb_value = crb;
  rep.crb_ok = crb_ok;

  rep.power_ok = true;
  for (int k = 0; k < cfg.K; ++k)
    rep.power_ok =
        rep.power_ok && st.beams.W[k].real().trace() <= cfg.P_max + 1e-7;
  return rep;
}

namespace {

nlohmann::json json_num(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

double num_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument("report: bad numeric field '" + s + "'");
  }
  return j.get<double>();
}

}  // namespace

std::string report_to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["rank_ratios"] = report.rank_ratios;
  j["robust_sinr_min"] = report.robust_sinr_min;
  j["robust_eq15_min"] = json_num(report.robust_eq15_min);
  j["robust_eq16_max"] = json_num(report.robust_eq16_max);
  j["crb_value"] = json_num(report.crb_value);
  j["crb_ok"] = report.crb_ok;
  j["power_ok"] = report.power_ok;
  j["sinr_ok"] = report.sinr_ok;
  j["samples_used"] = report.samples_used;
  return j.dump(2);
}

VerificationReport report_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  VerificationReport rep;
  rep.rank_ratios = j.at("rank_ratios").get<std::vector<double>>();
  rep.robust_sinr_min = j.at("robust_sinr_min").get<std::vector<double>>();
  rep.robust_eq15_min = num_from_json(j.at("robust_eq15_min"));
  rep.robust_eq16_max = num_from_json(j.at("robust_eq16_max"));
  rep.crb_value = num_from_json(j.at("crb_value"));
  rep.crb_ok = j.at("crb_ok").get<bool>();
  rep.power_ok = j.at("power_ok").get<bool>();
  rep.sinr_ok = j.at("sinr_ok").get<bool>();
  rep.samples_used = j.at("samples_used").get<int>();
  return rep;
}

}  // namespace isacbeam
