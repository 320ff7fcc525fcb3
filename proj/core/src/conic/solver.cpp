#include "isacbeam/conic/solver.hpp"

#include <mutex>

extern "C" void openblas_set_num_threads(int);

namespace isacbeam::conic {

ConicSolution solve_with_scs(const ConicProblem& problem,
                             const SolverSettings& settings);
ConicSolution solve_with_clarabel(const ConicProblem& problem,
                                  const SolverSettings& settings);

namespace {

// Threaded BLAS reductions make the backends nondeterministic run-to-run;
// identical inputs must reproduce identical iterates. Parallelism lives at
// the sweep-cell level instead.
void pin_blas_threads() {
  static std::once_flag flag;
  std::call_once(flag, []() { openblas_set_num_threads(1); });
}

}  // namespace

ConicSolution solve(const ConicProblem& problem, const SolverSettings& settings) {
  pin_blas_threads();
  switch (settings.backend) {
    case SolverBackend::scs:
      return solve_with_scs(problem, settings);
    case SolverBackend::clarabel:
      return solve_with_clarabel(problem, settings);
  }
  return solve_with_clarabel(problem, settings);
}

}  // namespace isacbeam::conic
