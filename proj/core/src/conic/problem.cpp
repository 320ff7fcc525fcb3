#include "isacbeam/conic/problem.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace isacbeam::conic {

CAffineMatrix HermitianVar::expr() const {
  CAffineMatrix M(n, n);
  for (int i = 0; i < n; ++i)
    M.at(i, i) = CLinExpr(LinExpr::variable(offset + i), LinExpr(0.0));
  int idx = offset + n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      LinExpr re = LinExpr::variable(idx);
      LinExpr im = LinExpr::variable(idx + 1);
      M.at(i, j) = CLinExpr(re, im);
      M.at(j, i) = CLinExpr(re, -im);
      idx += 2;
    }
  }
  return M;
}

Eigen::MatrixXcd HermitianVar::value(const Eigen::VectorXd& x) const {
  Eigen::MatrixXcd M(n, n);
  for (int i = 0; i < n; ++i) M(i, i) = x(offset + i);
  int idx = offset + n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      M(i, j) = {x(idx), x(idx + 1)};
      M(j, i) = std::conj(M(i, j));
      idx += 2;
    }
  }
  return M;
}

CLinExpr ComplexVectorVar::entry(int i) const {
  return {LinExpr::variable(offset + 2 * i), LinExpr::variable(offset + 2 * i + 1)};
}

Eigen::VectorXcd ComplexVectorVar::value(const Eigen::VectorXd& x) const {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = {x(offset + 2 * i), x(offset + 2 * i + 1)};
  return v;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

ScalarVar ConicProblem::add_free(const std::string& name) {
  blocks_.push_back({name, num_vars_, 1, VarBlock::Kind::free_scalar});
  return {num_vars_++};
}

ScalarVar ConicProblem::add_nonneg(const std::string& name) {
  blocks_.push_back({name, num_vars_, 1, VarBlock::Kind::nonneg_scalar});
  nonneg_vars_.push_back(num_vars_);
  return {num_vars_++};
}

HermitianVar ConicProblem::add_hermitian(const std::string& name, int n) {
  HermitianVar v{num_vars_, n};
  blocks_.push_back({name, num_vars_, v.num_reals(), VarBlock::Kind::hermitian});
  num_vars_ += v.num_reals();
  return v;
}

ComplexVectorVar ConicProblem::add_complex_vector(const std::string& name, int n) {
  ComplexVectorVar v{num_vars_, n};
  blocks_.push_back({name, num_vars_, v.num_reals(), VarBlock::Kind::complex_vector});
  num_vars_ += v.num_reals();
  return v;
}

namespace {

void check_expr(const LinExpr& e, int num_vars, const std::string& where) {
  if (!std::isfinite(e.constant()))
    throw std::invalid_argument(where + ": non-finite constant");
  for (const auto& t : e.terms()) {
    if (t.var < 0 || t.var >= num_vars)
      throw std::invalid_argument(where + ": reference to undeclared variable");
    if (!std::isfinite(t.coeff))
      throw std::invalid_argument(where + ": non-finite coefficient");
  }
}

}  // namespace

void ConicProblem::set_objective_max(LinExpr objective) {
  objective.compress();
  check_expr(objective, num_vars_, name_ + " objective");
  objective_ = std::move(objective);
}

void ConicProblem::add_linear_ge0(LinExpr expr, const std::string& name) {
  expr.compress();
  check_expr(expr, num_vars_, name);
  linear_.push_back({std::move(expr), name});
}

void ConicProblem::add_soc(LinExpr t, std::vector<LinExpr> u, const std::string& name) {
  t.compress();
  check_expr(t, num_vars_, name);
  for (auto& e : u) {
    e.compress();
    check_expr(e, num_vars_, name);
  }
  socs_.push_back({std::move(t), std::move(u), name});
}

void ConicProblem::add_exp(LinExpr x, LinExpr y, LinExpr z, const std::string& name) {
  x.compress();
  y.compress();
  z.compress();
  check_expr(x, num_vars_, name);
  check_expr(y, num_vars_, name);
  check_expr(z, num_vars_, name);
  exps_.push_back({std::move(x), std::move(y), std::move(z), name});
}

void ConicProblem::add_lmi(RAffineMatrix S, const std::string& name) {
  if (S.rows() != S.cols())
    throw std::invalid_argument(name + ": LMI block must be square");
  for (int r = 0; r < S.rows(); ++r)
    for (int c = 0; c < S.cols(); ++c) {
      S.at(r, c).compress();
      check_expr(S.at(r, c), num_vars_, name);
    }
  lmis_.push_back({std::move(S), std::nullopt, name});
}

void ConicProblem::add_hermitian_lmi(CAffineMatrix M, const std::string& name) {
  RAffineMatrix S = embed_hermitian(M);
  for (int r = 0; r < S.rows(); ++r)
    for (int c = 0; c < S.cols(); ++c) {
      S.at(r, c).compress();
      check_expr(S.at(r, c), num_vars_, name);
    }
  lmis_.push_back({std::move(S), std::move(M), name});
}

void ConicProblem::add_psd(const HermitianVar& W, const std::string& name) {
  add_hermitian_lmi(W.expr(), name);
}

namespace {

double exp_cone_violation(double x, double y, double z) {
  // (x, y, z) in K_exp iff y > 0 and y*e^{x/y} <= z, or y = 0, x <= 0, z >= 0.
  constexpr double kEps = 1e-12;
  if (y > kEps) {
    const double lhs = y * std::exp(x / y);
    return std::max(0.0, lhs - z);
  }
  double v = std::max(0.0, -y);
  v = std::max(v, x);
  v = std::max(v, -z);
  return std::max(0.0, v);
}

}  // namespace

std::vector<std::pair<std::string, double>> ConicProblem::violations(
    const Eigen::VectorXd& x) const {
  std::vector<std::pair<std::string, double>> out;
  for (int v : nonneg_vars_) out.emplace_back("var_nonneg", std::max(0.0, -x(v)));
  for (const auto& c : linear_)
    out.emplace_back(c.name, std::max(0.0, -c.expr.eval(x)));
  for (const auto& c : socs_) {
    double norm2 = 0.0;
    for (const auto& e : c.u) {
      const double v = e.eval(x);
      norm2 += v * v;
    }
    out.emplace_back(c.name, std::max(0.0, std::sqrt(norm2) - c.t.eval(x)));
  }
  for (const auto& c : exps_)
    out.emplace_back(c.name,
                     exp_cone_violation(c.x.eval(x), c.y.eval(x), c.z.eval(x)));
  for (const auto& c : lmis_) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.S.eval(x),
                                                      Eigen::EigenvaluesOnly);
    out.emplace_back(c.name, std::max(0.0, -es.eigenvalues().minCoeff()));
  }
  return out;
}

double ConicProblem::max_violation(const Eigen::VectorXd& x) const {
  double worst = 0.0;
  for (const auto& [name, v] : violations(x)) worst = std::max(worst, v);
  return worst;
}

namespace {

void dump_expr(std::ostringstream& out, const LinExpr& e) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", e.constant());
  out << buf;
  for (const auto& t : e.terms()) {
    std::snprintf(buf, sizeof(buf), " %+.17g*x%d", t.coeff, t.var);
    out << buf;
  }
}

}  // namespace

std::string ConicProblem::dump() const {
  std::ostringstream out;
  out << "problem " << name_ << "\n";
  out << "vars " << num_vars_ << "\n";
  for (const auto& b : blocks_) {
    const char* kind = "free";
    switch (b.kind) {
      case VarBlock::Kind::free_scalar: kind = "free"; break;
      case VarBlock::Kind::nonneg_scalar: kind = "nonneg"; break;
      case VarBlock::Kind::hermitian: kind = "hermitian"; break;
      case VarBlock::Kind::complex_vector: kind = "cvector"; break;
    }
    out << "block " << b.name << " " << kind << " offset=" << b.offset
        << " size=" << b.size << "\n";
  }
  out << "objective max ";
  dump_expr(out, objective_);
  out << "\n";
  for (const auto& c : linear_) {
    out << "linear_ge0 " << c.name << " ";
    dump_expr(out, c.expr);
    out << "\n";
  }
  for (const auto& c : socs_) {
    out << "soc " << c.name << " dim=" << c.u.size() + 1 << "\n  t: ";
    dump_expr(out, c.t);
    out << "\n";
    for (const auto& e : c.u) {
      out << "  u: ";
      dump_expr(out, e);
      out << "\n";
    }
  }
  for (const auto& c : exps_) {
    out << "exp " << c.name << "\n  x: ";
    dump_expr(out, c.x);
    out << "\n  y: ";
    dump_expr(out, c.y);
    out << "\n  z: ";
    dump_expr(out, c.z);
    out << "\n";
  }
  for (const auto& c : lmis_) {
    out << "lmi " << c.name << " dim=" << c.S.rows() << "\n";
    for (int r = 0; r < c.S.rows(); ++r)
      for (int col = 0; col < c.S.cols(); ++col) {
        if (c.S.at(r, col).is_constant() && c.S.at(r, col).constant() == 0.0)
          continue;
        out << "  (" << r << "," << col << "): ";
        dump_expr(out, c.S.at(r, col));
        out << "\n";
      }
  }
  return out.str();
}

}  // namespace isacbeam::conic
