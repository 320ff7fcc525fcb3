#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isacbeam/conic/expr.hpp"

namespace isacbeam::conic {

struct ScalarVar {
  int index = -1;
};

// Hermitian matrix variable, parametrized by n^2 reals: n diagonal entries
// followed by (re, im) pairs for the strict upper triangle in row-major
// order.
struct HermitianVar {
  int offset = -1;
  int n = 0;

  int num_reals() const { return n * n; }
  CAffineMatrix expr() const;
  Eigen::MatrixXcd value(const Eigen::VectorXd& x) const;
};

// Complex vector variable stored as interleaved (re, im) pairs.
struct ComplexVectorVar {
  int offset = -1;
  int n = 0;

  int num_reals() const { return 2 * n; }
  CLinExpr entry(int i) const;
  Eigen::VectorXcd value(const Eigen::VectorXd& x) const;
};

enum class SolveStatus { optimal, infeasible, unbounded, numerical_failure };

std::string to_string(SolveStatus s);

struct SolverStats {
  long iterations = 0;
  double primal_res = 0.0;
  double dual_res = 0.0;
  double gap = 0.0;
  double solve_ms = 0.0;
};

struct ConicSolution {
  SolveStatus status = SolveStatus::numerical_failure;
  Eigen::VectorXd x;           // variable assignment (empty unless optimal)
  double objective_value = 0;  // in the declared max sense
  SolverStats stats;
  std::string message;
};

// Solver-agnostic mixed-cone program: linear objective (max sense), linear
// inequalities, second-order cones, exponential cones and LMIs over named
// variable blocks. Complex LMIs are stored alongside their real embedding.
class ConicProblem {
 public:
  explicit ConicProblem(std::string name) : name_(std::move(name)) {}

  // ---- variables ----
  ScalarVar add_free(const std::string& name);
  ScalarVar add_nonneg(const std::string& name);
  HermitianVar add_hermitian(const std::string& name, int n);
  ComplexVectorVar add_complex_vector(const std::string& name, int n);

  // ---- objective (max sense) ----
  void set_objective_max(LinExpr objective);
  const LinExpr& objective() const { return objective_; }

  // ---- constraints ----
  void add_linear_ge0(LinExpr expr, const std::string& name);   // expr >= 0
  void add_soc(LinExpr t, std::vector<LinExpr> u, const std::string& name);  // ||u|| <= t
  void add_exp(LinExpr x, LinExpr y, LinExpr z, const std::string& name);    // y e^{x/y} <= z
  void add_lmi(RAffineMatrix S, const std::string& name);
  // Embeds the complex Hermitian LMI and keeps the complex form for audits.
  void add_hermitian_lmi(CAffineMatrix M, const std::string& name);
  void add_psd(const HermitianVar& W, const std::string& name);

  // ---- introspection ----
  const std::string& name() const { return name_; }
  int num_vars() const { return num_vars_; }

  struct LinearCon {
    LinExpr expr;
    std::string name;
  };
  struct SocCon {
    LinExpr t;
    std::vector<LinExpr> u;
    std::string name;
  };
  struct ExpCon {
    LinExpr x, y, z;
    std::string name;
  };
  struct LmiCon {
    RAffineMatrix S;
    std::optional<CAffineMatrix> complex_form;
    std::string name;
  };

  const std::vector<int>& nonneg_vars() const { return nonneg_vars_; }
  const std::vector<LinearCon>& linear_cons() const { return linear_; }
  const std::vector<SocCon>& soc_cons() const { return socs_; }
  const std::vector<ExpCon>& exp_cons() const { return exps_; }
  const std::vector<LmiCon>& lmi_cons() const { return lmis_; }

  // Worst cone violation of an assignment; 0 means feasible.
  double max_violation(const Eigen::VectorXd& x) const;
  // Per-constraint violations, (name, violation), for diagnostics.
  std::vector<std::pair<std::string, double>> violations(const Eigen::VectorXd& x) const;

  // Self-describing text dump (variable blocks, cone types, coefficients).
  std::string dump() const;

 private:
  struct VarBlock {
    std::string name;
    int offset;
    int size;
    enum class Kind { free_scalar, nonneg_scalar, hermitian, complex_vector } kind;
  };

  std::string name_;
  int num_vars_ = 0;
  std::vector<VarBlock> blocks_;
  std::vector<int> nonneg_vars_;
  LinExpr objective_;
  std::vector<LinearCon> linear_;
  std::vector<SocCon> socs_;
  std::vector<ExpCon> exps_;
  std::vector<LmiCon> lmis_;
};

}  // namespace isacbeam::conic
