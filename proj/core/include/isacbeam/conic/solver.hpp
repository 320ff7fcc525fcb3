#pragma once

#include "isacbeam/conic/problem.hpp"

namespace isacbeam::conic {

// Backend settings. Any conic solver supporting PSD, second-order and
// exponential cones can sit behind solve(); the adapter downgrades the
// status unless the returned point meets feas_tol and gap_tol.
//
// clarabel: interior-point, the default; handles the active CRB boundary
// well. scs: first-order operator splitting, kept as the alternate route.
enum class SolverBackend { clarabel, scs };

struct SolverSettings {
  SolverBackend backend = SolverBackend::clarabel;
  double eps_abs = 1e-8;
  double eps_rel = 1e-8;
  double eps_infeas = 1e-9;
  int max_iters = 200000;      // scs iteration cap
  int max_ipm_iters = 200;     // clarabel iteration cap
  double feas_tol = 1e-7;  // adapter-enforced max cone violation
  double gap_tol = 1e-6;   // adapter-enforced relative duality gap
  bool verbose = false;
};

ConicSolution solve(const ConicProblem& problem, const SolverSettings& settings = {});

}  // namespace isacbeam::conic
