#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <clarabel_ffi.h>

#include "conic/standard_form.hpp"
#include "isacbeam/conic/solver.hpp"

namespace isacbeam::conic {

ConicSolution solve_with_clarabel(const ConicProblem& problem,
                                  const SolverSettings& settings) {
  StandardForm sf = build_standard_form(problem, PsdPacking::upper_col_major);

  std::vector<double> A_x(sf.A.valuePtr(), sf.A.valuePtr() + sf.A.nonZeros());
  std::vector<int> A_i(sf.A.innerIndexPtr(), sf.A.innerIndexPtr() + sf.A.nonZeros());
  std::vector<int> A_p(sf.A.outerIndexPtr(), sf.A.outerIndexPtr() + sf.n + 1);

  std::vector<int> kinds, dims;
  kinds.reserve(sf.cone_kinds.size());
  for (std::size_t i = 0; i < sf.cone_kinds.size(); ++i) {
    kinds.push_back(static_cast<int>(sf.cone_kinds[i]));
    dims.push_back(sf.cone_dims[i]);
  }

  ConicSolution out;
  long total_iters = 0;
  // The IPM occasionally terminates a hair outside the adapter's feasibility
  // contract; a tighter deterministic retry usually lands well inside it.
  const double eps_ladder[2] = {settings.eps_abs, settings.eps_abs * 1e-2};
  for (int attempt = 0; attempt < 2; ++attempt) {
    Eigen::VectorXd x(sf.n);
    double obj = 0.0, res_pri = 0.0, res_dual = 0.0, gap = 0.0;
    int iters = 0;
    const double eps = std::max(eps_ladder[attempt], 1e-12);

    const int status = clarabel_ffi_solve(
        sf.n, sf.m, A_x.data(), A_i.data(), A_p.data(),
        static_cast<int>(A_x.size()), sf.b.data(), sf.c.data(), kinds.data(),
        dims.data(), static_cast<int>(kinds.size()), eps,
        std::max(settings.eps_rel * (attempt == 0 ? 1.0 : 1e-2), 1e-12),
        settings.max_ipm_iters + attempt * 100, settings.verbose ? 1 : 0,
        x.data(), &obj, &iters, &res_pri, &res_dual, &gap);

    total_iters += iters;
    out.stats.iterations = total_iters;
    out.stats.primal_res = res_pri;
    out.stats.dual_res = res_dual;
    out.stats.gap = gap;

    if (status == CLARABEL_FFI_SOLVED || status == CLARABEL_FFI_ALMOST_SOLVED) {
      out.x = x;
      out.objective_value = problem.objective().eval(out.x);
      const double violation = problem.max_violation(out.x);
      const double rel_gap = gap / std::max(1.0, std::abs(obj));
      if (violation <= settings.feas_tol && rel_gap <= settings.gap_tol) {
        out.status = SolveStatus::optimal;
        out.message = status == CLARABEL_FFI_SOLVED ? "solved" : "almost_solved";
        if (attempt > 0) out.message += " (retry)";
        return out;
      }
      out.status = SolveStatus::numerical_failure;
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "solved (adapter: violation=%.3e, rel_gap=%.3e)", violation,
                    rel_gap);
      out.message = buf;
      continue;  // tighter retry
    }
    if (status == CLARABEL_FFI_PRIMAL_INFEASIBLE) {
      out.status = SolveStatus::infeasible;
      out.message = "primal_infeasible";
    } else if (status == CLARABEL_FFI_DUAL_INFEASIBLE) {
      out.status = SolveStatus::unbounded;
      out.message = "dual_infeasible";
    } else {
      out.status = SolveStatus::numerical_failure;
      out.message = "solver status " + std::to_string(status);
    }
    return out;
  }
  return out;
}

}  // namespace isacbeam::conic
