#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace isacbeam::conic {

// Sparse affine functional of the decision vector: constant + sum coeff*x_i.
class LinExpr {
 public:
  struct Term {
    int var;
    double coeff;
  };

  LinExpr() = default;
  LinExpr(double constant) : constant_(constant) {}  // NOLINT(implicit)

  static LinExpr variable(int index, double coeff = 1.0);

  LinExpr& operator+=(const LinExpr& other);
  LinExpr& operator-=(const LinExpr& other);
  LinExpr& operator*=(double scale);
  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(LinExpr a, double s) { return a *= s; }
  friend LinExpr operator*(double s, LinExpr a) { return a *= s; }
  LinExpr operator-() const;

  double constant() const { return constant_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_constant() const { return terms_.empty(); }

  // Merges duplicate variables and drops zero coefficients.
  void compress();

  double eval(const Eigen::VectorXd& x) const;

 private:
  std::vector<Term> terms_;
  double constant_ = 0.0;
};

// Complex-valued affine expression of real variables.
struct CLinExpr {
  LinExpr re;
  LinExpr im;

  CLinExpr() = default;
  CLinExpr(LinExpr r, LinExpr i) : re(std::move(r)), im(std::move(i)) {}
  CLinExpr(std::complex<double> c) : re(c.real()), im(c.imag()) {}  // NOLINT

  CLinExpr conj() const { return {re, -im}; }
  CLinExpr& operator+=(const CLinExpr& other);
  friend CLinExpr operator+(CLinExpr a, const CLinExpr& b) { return a += b; }
  CLinExpr operator-() const { return {-re, -im}; }
  friend CLinExpr operator*(const CLinExpr& a, std::complex<double> c);
  friend CLinExpr operator*(std::complex<double> c, const CLinExpr& a) { return a * c; }

  std::complex<double> eval(const Eigen::VectorXd& x) const {
    return {re.eval(x), im.eval(x)};
  }
};

// Dense matrix of complex affine expressions (row-major storage).
class CAffineMatrix {
 public:
  CAffineMatrix() = default;
  CAffineMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  static CAffineMatrix constant(const Eigen::MatrixXcd& M);
  static CAffineMatrix identity(int n, const LinExpr& scale);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  CLinExpr& at(int r, int c) { return e_[static_cast<std::size_t>(r) * cols_ + c]; }
  const CLinExpr& at(int r, int c) const {
    return e_[static_cast<std::size_t>(r) * cols_ + c];
  }

  CAffineMatrix adjoint() const;
  CAffineMatrix& operator+=(const CAffineMatrix& other);
  friend CAffineMatrix operator+(CAffineMatrix a, const CAffineMatrix& b) {
    return a += b;
  }
  CAffineMatrix operator-() const;
  CAffineMatrix scaled(std::complex<double> c) const;

  Eigen::MatrixXcd eval(const Eigen::VectorXd& x) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<CLinExpr> e_;
};

// affine * constant and constant * affine products.
CAffineMatrix mul(const CAffineMatrix& M, const Eigen::MatrixXcd& C);
CAffineMatrix mul(const Eigen::MatrixXcd& C, const CAffineMatrix& M);

// z^H M z for a fixed complex vector z and affine M.
CLinExpr quad_form(const Eigen::VectorXcd& z, const CAffineMatrix& M);

// tr(C M) for a fixed complex matrix C and affine M.
CLinExpr trace_prod(const Eigen::MatrixXcd& C, const CAffineMatrix& M);

// Dense matrix of real affine expressions; used for embedded LMIs.
class RAffineMatrix {
 public:
  RAffineMatrix() = default;
  RAffineMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  LinExpr& at(int r, int c) { return e_[static_cast<std::size_t>(r) * cols_ + c]; }
  const LinExpr& at(int r, int c) const {
    return e_[static_cast<std::size_t>(r) * cols_ + c];
  }

  Eigen::MatrixXd eval(const Eigen::VectorXd& x) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<LinExpr> e_;
};

// Real embedding [[Re M, -Im M], [Im M, Re M]] of a Hermitian affine matrix.
// PSD iff the complex matrix is PSD; every eigenvalue appears twice.
RAffineMatrix embed_hermitian(const CAffineMatrix& M);

// Numeric counterpart; rejects inputs that are not Hermitian within 1e-10.
Eigen::MatrixXd embed_hermitian(const Eigen::MatrixXcd& M);

}  // namespace isacbeam::conic
