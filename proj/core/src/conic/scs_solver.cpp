#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include <scs.h>

#include "conic/standard_form.hpp"
#include "isacbeam/conic/solver.hpp"

namespace isacbeam::conic {

ConicSolution solve_with_scs(const ConicProblem& problem,
                             const SolverSettings& settings) {
  StandardForm sf = build_standard_form(problem, PsdPacking::lower_col_major);

  std::vector<scs_float> A_x(sf.A.valuePtr(), sf.A.valuePtr() + sf.A.nonZeros());
  std::vector<scs_int> A_i(sf.A.innerIndexPtr(),
                           sf.A.innerIndexPtr() + sf.A.nonZeros());
  std::vector<scs_int> A_p(sf.A.outerIndexPtr(), sf.A.outerIndexPtr() + sf.n + 1);

  // SCS wants cones grouped by type in a fixed global order; the standard
  // form already emits rows that way.
  scs_int num_l = 0;
  std::vector<scs_int> soc_dims, psd_dims;
  scs_int num_exp = 0;
  for (std::size_t i = 0; i < sf.cone_kinds.size(); ++i) {
    switch (sf.cone_kinds[i]) {
      case ConeKind::nonneg: num_l += sf.cone_dims[i]; break;
      case ConeKind::soc: soc_dims.push_back(sf.cone_dims[i]); break;
      case ConeKind::psd_triangle: psd_dims.push_back(sf.cone_dims[i]); break;
      case ConeKind::exp: ++num_exp; break;
      case ConeKind::zero: break;
    }
  }

  ScsMatrix A_scs;
  A_scs.x = A_x.data();
  A_scs.i = A_i.data();
  A_scs.p = A_p.data();
  A_scs.m = sf.m;
  A_scs.n = sf.n;

  ScsData data;
  data.m = sf.m;
  data.n = sf.n;
  data.A = &A_scs;
  data.P = SCS_NULL;
  data.b = sf.b.data();
  data.c = sf.c.data();

  ScsCone cone;
  cone.z = 0;
  cone.l = num_l;
  cone.bu = SCS_NULL;
  cone.bl = SCS_NULL;
  cone.bsize = 0;
  cone.q = soc_dims.empty() ? SCS_NULL : soc_dims.data();
  cone.qsize = static_cast<scs_int>(soc_dims.size());
  cone.s = psd_dims.empty() ? SCS_NULL : psd_dims.data();
  cone.ssize = static_cast<scs_int>(psd_dims.size());
  cone.ep = num_exp;
  cone.ed = 0;
  cone.p = SCS_NULL;
  cone.psize = 0;

  ScsSettings stgs;
  scs_set_default_settings(&stgs);
  stgs.eps_abs = settings.eps_abs;
  stgs.eps_rel = settings.eps_rel;
  stgs.eps_infeas = settings.eps_infeas;
  stgs.max_iters = settings.max_iters;
  stgs.verbose = settings.verbose ? 1 : 0;

  ScsSolution sol = {nullptr, nullptr, nullptr};
  ScsInfo info;
  const scs_int exit_flag = scs(&data, &cone, &stgs, &sol, &info);

  ConicSolution out;
  out.stats.iterations = info.iter;
  out.stats.primal_res = info.res_pri;
  out.stats.dual_res = info.res_dual;
  out.stats.gap = info.gap;
  out.stats.solve_ms = info.setup_time + info.solve_time;
  out.message = info.status;

  const bool has_x = sol.x != nullptr;
  if ((exit_flag == SCS_SOLVED || exit_flag == SCS_SOLVED_INACCURATE) && has_x) {
    out.x = Eigen::Map<Eigen::VectorXd>(sol.x, sf.n);
    out.objective_value = problem.objective().eval(out.x);
    const double violation = problem.max_violation(out.x);
    const double rel_gap =
        std::abs(info.pobj - info.dobj) / std::max(1.0, std::abs(info.pobj));
    if (violation <= settings.feas_tol && rel_gap <= settings.gap_tol) {
      out.status = SolveStatus::optimal;
    } else {
      out.status = SolveStatus::numerical_failure;
      out.message += " (adapter: violation=" + std::to_string(violation) +
                     ", rel_gap=" + std::to_string(rel_gap) + ")";
    }
  } else if (exit_flag == SCS_INFEASIBLE) {
    out.status = SolveStatus::infeasible;
  } else if (exit_flag == SCS_UNBOUNDED) {
    out.status = SolveStatus::unbounded;
  } else {
    out.status = SolveStatus::numerical_failure;
  }

  std::free(sol.x);
  std::free(sol.y);
  std::free(sol.s);
  return out;
}

}  // namespace isacbeam::conic
