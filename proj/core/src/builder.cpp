#include "isacbeam/builder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace isacbeam {

using conic::CAffineMatrix;
using conic::CLinExpr;
using conic::LinExpr;

CAffineMatrix build_sinr_lmi_18(const CAffineMatrix& W_k,
                                const Eigen::VectorXcd& z_k,
                                const Eigen::MatrixXcd& H_hat_k,
                                const LinExpr& eps_k, const LinExpr& lambda_1k,
                                double phi) {
  const int M_t = W_k.rows();
  if (H_hat_k.cols() != M_t || H_hat_k.rows() != z_k.size())
    throw std::invalid_argument("build_sinr_lmi_18: dimension mismatch");
  const Eigen::VectorXcd g = H_hat_k.adjoint() * z_k;  // M_t x 1

  CAffineMatrix lmi(M_t + 1, M_t + 1);
  CAffineMatrix top_left = W_k + CAffineMatrix::identity(M_t, lambda_1k);
  CAffineMatrix Wg = mul(W_k, g);
  for (int i = 0; i < M_t; ++i) {
    for (int j = 0; j < M_t; ++j) lmi.at(i, j) = top_left.at(i, j);
    lmi.at(i, M_t) = Wg.at(i, 0);
    lmi.at(M_t, i) = Wg.at(i, 0).conj();
  }
  CLinExpr corner = quad_form(g, W_k);  // z^H Hhat W Hhat^H z
  corner.re -= eps_k;
  corner.re -= lambda_1k * (phi * phi * z_k.squaredNorm());
  lmi.at(M_t, M_t) = CLinExpr(corner.re, LinExpr(0.0));
  return lmi;
}

CAffineMatrix build_interference_lmi_19(const CAffineMatrix& Lambda_k,
                                        const Eigen::VectorXcd& z_k,
                                        const Eigen::MatrixXcd& H_hat_k,
                                        const LinExpr& v_k, const LinExpr& lambda_2k,
                                        double phi, double sigma_m2) {
  const int M_t = Lambda_k.rows();
  if (H_hat_k.cols() != M_t || H_hat_k.rows() != z_k.size())
    throw std::invalid_argument("build_interference_lmi_19: dimension mismatch");
  const Eigen::VectorXcd g = H_hat_k.adjoint() * z_k;

  CAffineMatrix lmi(M_t + 1, M_t + 1);
  CAffineMatrix top_left = -Lambda_k + CAffineMatrix::identity(M_t, lambda_2k);
  CAffineMatrix Lg = mul(Lambda_k, g);
  for (int i = 0; i < M_t; ++i) {
    for (int j = 0; j < M_t; ++j) lmi.at(i, j) = top_left.at(i, j);
    lmi.at(i, M_t) = -Lg.at(i, 0);
    lmi.at(M_t, i) = (-Lg.at(i, 0)).conj();
  }
  CLinExpr corner = -quad_form(g, Lambda_k);
  corner.re += v_k;
  corner.re -= sigma_m2 * z_k.squaredNorm();
  corner.re -= lambda_2k * (phi * phi * z_k.squaredNorm());
  lmi.at(M_t, M_t) = CLinExpr(corner.re, LinExpr(0.0));
  return lmi;
}

CAffineMatrix build_crb_lmi_21(const SteeringContext& ctx, const CAffineMatrix& R_x,
                               double Gamma) {
  if (!(Gamma > 0.0))
    throw std::invalid_argument("build_crb_lmi_21: Gamma must be positive");
  const Eigen::MatrixXcd DD = ctx.A_dot.adjoint() * ctx.A_dot;
  const Eigen::MatrixXcd DA = ctx.A_dot.adjoint() * ctx.A;
  const Eigen::MatrixXcd AA = ctx.A.adjoint() * ctx.A;

  CAffineMatrix lmi(2, 2);
  CLinExpr tl = trace_prod(DD, R_x);
  tl.re -= Gamma;
  lmi.at(0, 0) = CLinExpr(tl.re, LinExpr(0.0));
  CLinExpr tr = trace_prod(DA, R_x);
  lmi.at(0, 1) = tr;
  lmi.at(1, 0) = tr.conj();
  CLinExpr br = trace_prod(AA, R_x);
  lmi.at(1, 1) = CLinExpr(br.re, LinExpr(0.0));
  return lmi;
}

namespace {

// Shared constraint assembly for P3 and its elastic variant. Slack
// expressions are zero in the exact problem.
struct P3Slacks {
  LinExpr power{0.0};
  LinExpr sinr{0.0};
  LinExpr robust{0.0};
  LinExpr crb{0.0};
};

void assemble_p3(conic::ConicProblem& prob, P3Problem* handles,
                 const SystemConfig& cfg, const ChannelSet& channels,
                 const Eigen::VectorXd& q, const std::vector<Eigen::VectorXcd>& z,
                 const P3Slacks& slacks) {
  const int K = cfg.K;
  const int M_t = cfg.M_t;
  if (static_cast<int>(q.size()) != K || static_cast<int>(z.size()) != K)
    throw std::invalid_argument("build_p3: q and z must have K entries");
  for (int k = 0; k < K; ++k) {
    if (!q.allFinite() || !z[k].allFinite())
      throw std::invalid_argument("build_p3: q and z must be finite");
    if (z[k].size() != cfg.N)
      throw std::invalid_argument("build_p3: z_k must have N entries");
    if (channels.H_hat[k].rows() != cfg.N || channels.H_hat[k].cols() != M_t)
      throw std::invalid_argument("build_p3: channel dimensions mismatch");
  }

  std::vector<conic::HermitianVar> W;
  std::vector<conic::ScalarVar> r, eps, v, lam1, lam2, s, u;
  for (int k = 0; k < K; ++k) {
    const std::string suffix = "_" + std::to_string(k);
    W.push_back(prob.add_hermitian("W" + suffix, M_t));
    r.push_back(prob.add_free("r" + suffix));
    eps.push_back(prob.add_free("eps" + suffix));
    v.push_back(prob.add_free("v" + suffix));
    lam1.push_back(prob.add_nonneg("lambda1" + suffix));
    lam2.push_back(prob.add_nonneg("lambda2" + suffix));
    s.push_back(prob.add_free("s" + suffix));
    u.push_back(prob.add_free("u" + suffix));
  }

  // Objective: sum_k f_k (2 q_k s_k - q_k^2 (tr W_k + P_0/K)), s_k the
  // epigraph of sqrt(log2(1+r_k)).
  LinExpr objective;
  for (int k = 0; k < K; ++k) {
    objective += (2.0 * cfg.f[k] * q(k)) * LinExpr::variable(s[k].index);
    LinExpr tr;
    for (int i = 0; i < M_t; ++i) tr += LinExpr::variable(W[k].offset + i);
    objective -= (cfg.f[k] * q(k) * q(k)) * tr;
    objective += LinExpr(-cfg.f[k] * q(k) * q(k) * cfg.fixed_power_share());
  }
  prob.set_objective_max(objective);

  for (int k = 0; k < K; ++k) {
    const std::string suffix = "_" + std::to_string(k);
    const CAffineMatrix W_expr = W[k].expr();

    prob.add_psd(W[k], "W_psd" + suffix);

    // tr(W_k) <= P_max (+ slack)
    LinExpr power(cfg.P_max);
    for (int i = 0; i < M_t; ++i) power -= LinExpr::variable(W[k].offset + i);
    power += slacks.power;
    prob.add_linear_ge0(power, "power_cap" + suffix);

    // r_k >= zeta_k (- slack)
    LinExpr floor = LinExpr::variable(r[k].index) - LinExpr(cfg.zeta[k]);
    floor += slacks.sinr;
    prob.add_linear_ge0(floor, "sinr_floor" + suffix);

    // (r_k + v_k)^2 <= 4 eps_k   <=>   ||[r+v, eps-1]|| <= eps+1
    LinExpr rv = LinExpr::variable(r[k].index) + LinExpr::variable(v[k].index);
    prob.add_soc(LinExpr::variable(eps[k].index) + LinExpr(1.0),
                 {rv, LinExpr::variable(eps[k].index) - LinExpr(1.0)},
                 "sqrt_eps" + suffix);

    // s_k^2 <= u_k   <=>   ||[s, (u-1)/2]|| <= (u+1)/2
    prob.add_soc(0.5 * (LinExpr::variable(u[k].index) + LinExpr(1.0)),
                 {LinExpr::variable(s[k].index),
                  0.5 * (LinExpr::variable(u[k].index) - LinExpr(1.0))},
                 "sqrt_rate" + suffix);

    // u_k <= log2(1 + r_k): (u ln2, 1, 1+r) in K_exp.
    prob.add_exp(M_LN2 * LinExpr::variable(u[k].index), LinExpr(1.0),
                 LinExpr(1.0) + LinExpr::variable(r[k].index), "log_rate" + suffix);

    // Robust LMIs (18) and (19).
    CAffineMatrix lmi18 = build_sinr_lmi_18(
        W_expr, z[k], channels.H_hat[k], LinExpr::variable(eps[k].index),
        LinExpr::variable(lam1[k].index), cfg.phi_k(k));
    CAffineMatrix lmi19_lambda(M_t, M_t);
    bool first = true;
    for (int i = 0; i < K; ++i) {
      if (i == k) continue;
      if (first) {
        lmi19_lambda = W[i].expr();
        first = false;
      } else {
        lmi19_lambda += W[i].expr();
      }
    }
    if (first) lmi19_lambda = CAffineMatrix::constant(Eigen::MatrixXcd::Zero(M_t, M_t));
    CAffineMatrix lmi19 = build_interference_lmi_19(
        lmi19_lambda, z[k], channels.H_hat[k], LinExpr::variable(v[k].index),
        LinExpr::variable(lam2[k].index), cfg.phi_k(k), cfg.sigma_m2);

    if (!slacks.robust.is_constant() || slacks.robust.constant() != 0.0) {
      for (int i = 0; i <= M_t; ++i) {
        lmi18.at(i, i).re += slacks.robust;
        lmi19.at(i, i).re += slacks.robust;
      }
    }
    prob.add_hermitian_lmi(lmi18, "lmi18" + suffix);
    prob.add_hermitian_lmi(lmi19, "lmi19" + suffix);
  }

  // CRB cap over R_x = sum_k W_k.
  if (cfg.crb_constrained()) {
    const SteeringContext ctx = build_steering_context(cfg);
    CAffineMatrix R_x = W[0].expr();
    for (int k = 1; k < K; ++k) R_x += W[k].expr();
    const double Gamma =
        cfg.sigma_s2 / (2.0 * std::norm(cfg.alpha) * cfg.L * cfg.rho);
    // PSD-invariant rescale keeps the coefficients near unit magnitude even
    // for tight CRB caps (Gamma ~ 1e3).
    CAffineMatrix crb = build_crb_lmi_21(ctx, R_x, Gamma).scaled(1.0 / Gamma);
    if (!slacks.crb.is_constant() || slacks.crb.constant() != 0.0) {
      crb.at(0, 0).re += slacks.crb;
      crb.at(1, 1).re += slacks.crb;
    }
    prob.add_hermitian_lmi(crb, "crb_lmi");
  }

  if (handles != nullptr) {
    handles->W = std::move(W);
    handles->r = std::move(r);
    handles->eps = std::move(eps);
    handles->v = std::move(v);
    handles->lambda1 = std::move(lam1);
    handles->lambda2 = std::move(lam2);
    handles->s = std::move(s);
    handles->u = std::move(u);
  }
}

}  // namespace

P3Problem build_p3(const SystemConfig& cfg, const ChannelSet& channels,
                   const Eigen::VectorXd& q, const std::vector<Eigen::VectorXcd>& z) {
  P3Problem out;
  assemble_p3(out.problem, &out, cfg, channels, q, z, P3Slacks{});
  return out;
}

P3Elastic build_p3_elastic(const SystemConfig& cfg, const ChannelSet& channels,
                           const Eigen::VectorXd& q,
                           const std::vector<Eigen::VectorXcd>& z) {
  P3Elastic out;
  out.slack_power = out.problem.add_nonneg("slack_power");
  out.slack_sinr = out.problem.add_nonneg("slack_sinr");
  out.slack_robust = out.problem.add_nonneg("slack_robust");
  out.slack_crb = out.problem.add_nonneg("slack_crb");

  P3Slacks slacks;
  slacks.power = LinExpr::variable(out.slack_power.index);
  slacks.sinr = LinExpr::variable(out.slack_sinr.index);
  slacks.robust = LinExpr::variable(out.slack_robust.index);
  slacks.crb = LinExpr::variable(out.slack_crb.index);

  P3Problem handles;
  assemble_p3(out.problem, &handles, cfg, channels, q, z, slacks);

  // Overrides the EE objective: find the least total relaxation. Slacks are
  // weighted by family scale so a watt of extra power and a unit of SINR
  // floor compare fairly.
  const double zeta_scale =
      std::max(1.0, *std::max_element(cfg.zeta.begin(), cfg.zeta.end()));
  LinExpr objective;
  objective -= (1.0 / cfg.P_max) * LinExpr::variable(out.slack_power.index);
  objective -= (1.0 / zeta_scale) * LinExpr::variable(out.slack_sinr.index);
  objective -= LinExpr::variable(out.slack_robust.index);
  objective -= LinExpr::variable(out.slack_crb.index);
  out.problem.set_objective_max(objective);
  return out;
}

P5Problem build_p5(const SystemConfig& cfg, const Eigen::MatrixXcd& H_hat_k,
                   const Eigen::VectorXcd& w_k, double r_k, double phi_k) {
  const int N = cfg.N;
  if (H_hat_k.rows() != N || H_hat_k.cols() != cfg.M_t)
    throw std::invalid_argument("build_p5: channel dimensions mismatch");
  if (w_k.size() != cfg.M_t)
    throw std::invalid_argument("build_p5: w_k must have M_t entries");

  P5Problem out;
  out.z = out.problem.add_complex_vector("z", N);
  out.lambda_z = out.problem.add_nonneg("lambda_z");
  out.t = out.problem.add_free("t");
  out.problem.set_objective_max(LinExpr::variable(out.t.index));

  const Eigen::VectorXcd g = H_hat_k * w_k;  // N x 1
  const double w_norm2 = w_k.squaredNorm();

  // Re{w^H Hhat^H z} = Re{g^H z}, linear in the z coordinates.
  LinExpr re_gz;
  for (int i = 0; i < N; ++i) {
    re_gz += g(i).real() * LinExpr::variable(out.z.offset + 2 * i);
    re_gz += g(i).imag() * LinExpr::variable(out.z.offset + 2 * i + 1);
  }
  const LinExpr lam = LinExpr::variable(out.lambda_z.index);
  const LinExpr t = LinExpr::variable(out.t.index);

  for (int sign = 0; sign < 2; ++sign) {
    CAffineMatrix lmi(N + 1, N + 1);
    const double sgn = (sign == 0) ? 1.0 : -1.0;
    for (int i = 0; i < N; ++i) {
      lmi.at(i, i) = CLinExpr(lam, LinExpr(0.0));
      CLinExpr zi = out.z.entry(i) * std::complex<double>(0.5 * sgn, 0.0);
      lmi.at(i, N) = zi;
      lmi.at(N, i) = zi.conj();
    }
    LinExpr corner;
    if (sign == 0) {
      corner = re_gz - t;
    } else {
      corner = -re_gz + LinExpr(r_k);
    }
    corner -= (phi_k * phi_k * w_norm2) * lam;
    lmi.at(N, N) = CLinExpr(corner, LinExpr(0.0));
    out.problem.add_hermitian_lmi(lmi, sign == 0 ? "p5_lower" : "p5_cap");
  }
  return out;
}

}  // namespace isacbeam
