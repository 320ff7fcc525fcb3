#include "isacbeam/conic/expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace isacbeam::conic {

LinExpr LinExpr::variable(int index, double coeff) {
  LinExpr e;
  e.terms_.push_back({index, coeff});
  return e;
}

LinExpr& LinExpr::operator+=(const LinExpr& other) {
  constant_ += other.constant_;
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& other) {
  constant_ -= other.constant_;
  terms_.reserve(terms_.size() + other.terms_.size());
  for (const auto& t : other.terms_) terms_.push_back({t.var, -t.coeff});
  return *this;
}

LinExpr& LinExpr::operator*=(double scale) {
  constant_ *= scale;
  for (auto& t : terms_) t.coeff *= scale;
  return *this;
}

LinExpr LinExpr::operator-() const {
  LinExpr e(*this);
  e *= -1.0;
  return e;
}

void LinExpr::compress() {
  if (terms_.empty()) return;
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().var == t.var)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(t);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Term& t) { return t.coeff == 0.0; }),
               merged.end());
  terms_ = std::move(merged);
}

double LinExpr::eval(const Eigen::VectorXd& x) const {
  double v = constant_;
  for (const auto& t : terms_) v += t.coeff * x(t.var);
  return v;
}

CLinExpr& CLinExpr::operator+=(const CLinExpr& other) {
  re += other.re;
  im += other.im;
  return *this;
}

CLinExpr operator*(const CLinExpr& a, std::complex<double> c) {
  CLinExpr out;
  out.re = a.re * c.real() - a.im * c.imag();
  out.im = a.re * c.imag() + a.im * c.real();
  return out;
}

CAffineMatrix CAffineMatrix::constant(const Eigen::MatrixXcd& M) {
  CAffineMatrix out(static_cast<int>(M.rows()), static_cast<int>(M.cols()));
  for (int r = 0; r < out.rows_; ++r)
    for (int c = 0; c < out.cols_; ++c) out.at(r, c) = CLinExpr(M(r, c));
  return out;
}

CAffineMatrix CAffineMatrix::identity(int n, const LinExpr& scale) {
  CAffineMatrix out(n, n);
  for (int i = 0; i < n; ++i) out.at(i, i) = CLinExpr(scale, LinExpr(0.0));
  return out;
}

CAffineMatrix CAffineMatrix::adjoint() const {
  CAffineMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out.at(c, r) = at(r, c).conj();
  return out;
}

CAffineMatrix& CAffineMatrix::operator+=(const CAffineMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("CAffineMatrix: dimension mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += other.e_[i];
  return *this;
}

CAffineMatrix CAffineMatrix::operator-() const {
  CAffineMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = -e_[i];
  return out;
}

CAffineMatrix CAffineMatrix::scaled(std::complex<double> c) const {
  CAffineMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] * c;
  return out;
}

Eigen::MatrixXcd CAffineMatrix::eval(const Eigen::VectorXd& x) const {
  Eigen::MatrixXcd M(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) M(r, c) = at(r, c).eval(x);
  return M;
}

CAffineMatrix mul(const CAffineMatrix& M, const Eigen::MatrixXcd& C) {
  if (M.cols() != C.rows())
    throw std::invalid_argument("mul: dimension mismatch");
  CAffineMatrix out(M.rows(), static_cast<int>(C.cols()));
  for (int r = 0; r < out.rows(); ++r)
    for (int c = 0; c < out.cols(); ++c) {
      CLinExpr acc;
      for (int k = 0; k < M.cols(); ++k) acc += M.at(r, k) * C(k, c);
      out.at(r, c) = std::move(acc);
    }
  return out;
}

CAffineMatrix mul(const Eigen::MatrixXcd& C, const CAffineMatrix& M) {
  if (C.cols() != M.rows())
    throw std::invalid_argument("mul: dimension mismatch");
  CAffineMatrix out(static_cast<int>(C.rows()), M.cols());
  for (int r = 0; r < out.rows(); ++r)
    for (int c = 0; c < out.cols(); ++c) {
      CLinExpr acc;
      for (int k = 0; k < M.rows(); ++k) acc += M.at(k, c) * C(r, k);
      out.at(r, c) = std::move(acc);
    }
  return out;
}

CLinExpr quad_form(const Eigen::VectorXcd& z, const CAffineMatrix& M) {
  if (M.rows() != z.size() || M.cols() != z.size())
    throw std::invalid_argument("quad_form: dimension mismatch");
  CLinExpr acc;
  for (int r = 0; r < M.rows(); ++r)
    for (int c = 0; c < M.cols(); ++c)
      acc += M.at(r, c) * (std::conj(z(r)) * z(c));
  return acc;
}

CLinExpr trace_prod(const Eigen::MatrixXcd& C, const CAffineMatrix& M) {
  if (C.cols() != M.rows() || C.rows() != M.cols())
    throw std::invalid_argument("trace_prod: dimension mismatch");
  CLinExpr acc;
  for (int r = 0; r < C.rows(); ++r)
    for (int c = 0; c < C.cols(); ++c) acc += M.at(c, r) * C(r, c);
  return acc;
}

Eigen::MatrixXd RAffineMatrix::eval(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd M(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) M(r, c) = at(r, c).eval(x);
  return M;
}

RAffineMatrix embed_hermitian(const CAffineMatrix& M) {
  if (M.rows() != M.cols())
    throw std::invalid_argument("embed_hermitian: matrix must be square");
  const int n = M.rows();
  RAffineMatrix out(2 * n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const CLinExpr& e = M.at(r, c);
      out.at(r, c) = e.re;
      out.at(n + r, n + c) = e.re;
      out.at(r, n + c) = -e.im;
      out.at(n + r, c) = e.im;
    }
  }
  return out;
}

Eigen::MatrixXd embed_hermitian(const Eigen::MatrixXcd& M) {
  if (M.rows() != M.cols())
    throw std::invalid_argument("embed_hermitian: matrix must be square");
  if ((M - M.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("embed_hermitian: matrix must be Hermitian");
  const int n = static_cast<int>(M.rows());
  Eigen::MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = M.real();
  out.bottomRightCorner(n, n) = M.real();
  out.topRightCorner(n, n) = -M.imag();
  out.bottomLeftCorner(n, n) = M.imag();
  return out;
}

}  // namespace isacbeam::conic
