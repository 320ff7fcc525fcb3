#pragma once

// Internal: lowering of a ConicProblem to the standard conic form
//   min c'x  s.t.  Ax + s = b,  s in K
// shared by the solver backends. The backends agree on everything except
// the PSD svec packing order.

#include <vector>

#include <Eigen/Sparse>

#include "isacbeam/conic/problem.hpp"

namespace isacbeam::conic {

enum class PsdPacking {
  lower_col_major,  // SCS convention
  upper_col_major,  // Clarabel convention
};

enum class ConeKind { zero = 0, nonneg = 1, soc = 2, psd_triangle = 3, exp = 4 };

struct StandardForm {
  int n = 0;
  int m = 0;
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;  // min sense
  std::vector<ConeKind> cone_kinds;
  std::vector<int> cone_dims;  // PSD entries carry the matrix side d
};

StandardForm build_standard_form(const ConicProblem& problem, PsdPacking packing);

}  // namespace isacbeam::conic
