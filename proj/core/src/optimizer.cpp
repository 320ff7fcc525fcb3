#include "isacbeam/optimizer.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace isacbeam {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::converged: return "converged";
    case RunStatus::max_iters: return "max_iters";
    case RunStatus::infeasible: return "infeasible";
    case RunStatus::solver_failure: return "solver_failure";
  }
  return "unknown";
}

FPState initialize(const SystemConfig& cfg, const ChannelSet& channels) {
  FPState st;
  const int K = cfg.K;
  const double P_init = std::min(cfg.P_max, cfg.fixed_power_share());

  st.beams.W.resize(K);
  st.beams.w.resize(K);
  for (int k = 0; k < K; ++k) {
    const auto& H = channels.H_hat[k];
    if (H.cwiseAbs().maxCoeff() == 0.0) {
      st.beams.W[k] = (P_init / cfg.M_t) *
                      Eigen::MatrixXcd::Identity(cfg.M_t, cfg.M_t);
      st.beams.w[k] = Eigen::VectorXcd::Zero(cfg.M_t);
      continue;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(H, Eigen::ComputeThinV);
    const Eigen::VectorXcd dir = svd.matrixV().col(0);
    st.beams.w[k] = std::sqrt(P_init) * dir;
    st.beams.W[k] = st.beams.w[k] * st.beams.w[k].adjoint();
  }

  st.q.resize(K);
  st.z.resize(K);
  st.r.setZero(K);
  st.eps.setZero(K);
  st.v.setZero(K);
  st.lambda1.setZero(K);
  st.lambda2.setZero(K);
  Eigen::VectorXd rates(K);
  for (int k = 0; k < K; ++k) {
    const double snr = sinr(channels.H_hat[k], st.beams, k, cfg.sigma_m2);
    rates(k) = rate(snr);
    st.q(k) = optimal_q(rates(k), st.beams.W[k], cfg);
    st.z[k] = optimal_z_nominal(channels.H_hat[k], st.beams, k, cfg.sigma_m2);
    st.r(k) = snr;
  }
  st.ee_init = system_ee(rates, st.beams, cfg);
  return st;
}

Eigen::VectorXcd evd_extract(const Eigen::MatrixXcd& W) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(W);
  const int n = static_cast<int>(W.rows());
  const double lambda1 = std::max(0.0, es.eigenvalues()(n - 1));
  Eigen::VectorXcd w = std::sqrt(lambda1) * es.eigenvectors().col(n - 1);

  // Phase convention: largest-modulus entry real nonnegative, ties on the
  // lowest index.
  int pivot = 0;
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double mag = std::abs(w(i));
    if (mag > best + 1e-15) {
      best = mag;
      pivot = i;
    }
  }
  if (best > 0.0) w *= std::conj(w(pivot)) / std::abs(w(pivot));
  return w;
}

IterationResult iterate_once(const FPState& state, const SystemConfig& cfg,
                             const ChannelSet& channels,
                             const conic::SolverSettings& solver) {
  IterationResult out;
  out.state = state;
  FPState& st = out.state;

  // Step 2: solve P3 at fixed (q, z).
  auto t0 = Clock::now();
  P3Problem p3 = build_p3(cfg, channels, state.q, state.z);
  conic::ConicSolution sol = conic::solve(p3.problem, solver);
  out.timing.p3_ms = ms_since(t0);

  if (sol.status == conic::SolveStatus::infeasible) {
    out.status = StepStatus::infeasible;
    // Elastic probe: which families need slack to restore feasibility.
    P3Elastic elastic = build_p3_elastic(cfg, channels, state.q, state.z);
    conic::ConicSolution esol = conic::solve(elastic.problem, solver);
    if (esol.status == conic::SolveStatus::optimal) {
      std::string families;
      const auto report = [&](const char* name, const conic::ScalarVar& v) {
        if (esol.x(v.index) > 1e-6) {
          if (!families.empty()) families += ", ";
          families += name;
          families += "(+" + std::to_string(esol.x(v.index)) + ")";
        }
      };
      report("power_cap", elastic.slack_power);
      report("sinr_floor", elastic.slack_sinr);
      report("robust_lmi", elastic.slack_robust);
      report("crb_lmi", elastic.slack_crb);
      out.diagnostics = families.empty()
                            ? "P3 infeasible; elastic probe found no blocking family"
                            : "P3 infeasible; blocking families: " + families;
    } else {
      out.diagnostics = "P3 infeasible; elastic probe " + to_string(esol.status);
    }
    return out;
  }
  if (sol.status != conic::SolveStatus::optimal) {
    out.status = StepStatus::solver_failure;
    out.diagnostics = "P3 " + to_string(sol.status) + ": " + sol.message;
    return out;
  }

  const int K = cfg.K;
  for (int k = 0; k < K; ++k) {
    st.beams.W[k] = p3.W[k].value(sol.x);
    st.r(k) = sol.x(p3.r[k].index);
    st.eps(k) = sol.x(p3.eps[k].index);
    st.v(k) = sol.x(p3.v[k].index);
    st.lambda1(k) = sol.x(p3.lambda1[k].index);
    st.lambda2(k) = sol.x(p3.lambda2[k].index);
  }
  st.ee_trace.push_back(sol.objective_value);

  // Step 3: EVD extraction.
  t0 = Clock::now();
  for (int k = 0; k < K; ++k) st.beams.w[k] = evd_extract(st.beams.W[k]);
  out.timing.extract_ms = ms_since(t0);

  // Step 4: q update. The update is the exact maximizer of the quadratic
  // transform in q at the current (r, W).
  Eigen::VectorXd surrogate(K);
  for (int k = 0; k < K; ++k) surrogate(k) = rate(std::max(0.0, st.r(k)));
  out.fp_obj_before_q = fp_objective(st.q, surrogate, st.beams, cfg);
  for (int k = 0; k < K; ++k) st.q(k) = optimal_q(surrogate(k), st.beams.W[k], cfg);
  out.fp_obj_after_q = fp_objective(st.q, surrogate, st.beams, cfg);

  // Step 5: z update from P5, one program per user.
  t0 = Clock::now();
  for (int k = 0; k < K; ++k) {
    P5Problem p5 = build_p5(cfg, channels.H_hat[k], st.beams.w[k], st.r(k),
                            cfg.phi_k(k));
    conic::ConicSolution zsol = conic::solve(p5.problem, solver);
    if (zsol.status == conic::SolveStatus::optimal) {
      st.z[k] = p5.z.value(zsol.x);
    } else {
      out.p5_failed_users.push_back(k);
    }
  }
  out.timing.p5_ms = ms_since(t0);

  // Diagnostic EE of the extracted rank-1 beams.
  Eigen::VectorXd rates(K);
  for (int k = 0; k < K; ++k)
    rates(k) = rate(sinr(channels.H_hat[k], st.beams, k, cfg.sigma_m2));
  st.true_ee_trace.push_back(system_ee(rates, st.beams, cfg));

  st.iteration += 1;
  return out;
}

RunResult run(const SystemConfig& cfg, const ChannelSet& channels,
              const conic::SolverSettings& solver) {
  RunResult out;
  out.state = initialize(cfg, channels);

  double prev_ee = out.state.ee_init;
  for (int j = 1; j <= cfg.max_iters; ++j) {
    IterationResult step = iterate_once(out.state, cfg, channels, solver);
    out.timing.p3_ms += step.timing.p3_ms;
    out.timing.p5_ms += step.timing.p5_ms;
    out.timing.extract_ms += step.timing.extract_ms;
    if (step.status != StepStatus::ok) {
      out.status = step.status == StepStatus::infeasible
                       ? RunStatus::infeasible
                       : RunStatus::solver_failure;
      out.failed_iteration = j;
      out.diagnostics = step.diagnostics;
      return out;
    }
    out.state = std::move(step.state);
    const double ee = out.state.ee_trace.back();
    if (ee < prev_ee - 0.01 * std::abs(prev_ee)) out.ee_dip_detected = true;
    const double gap = std::abs(ee - prev_ee);
    const double tol = cfg.p_con_absolute
                           ? cfg.p_con
                           : cfg.p_con * std::max(1.0, std::abs(ee));
    if (gap < tol) {
      out.state.converged = true;
      out.status = RunStatus::converged;
      return out;
    }
    prev_ee = ee;
  }
  out.status = RunStatus::max_iters;
  return out;
}

}  // namespace isacbeam
