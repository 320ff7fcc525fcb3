#pragma once

#include <string>
#include <vector>

#include "isacbeam/builder.hpp"
#include "isacbeam/channel.hpp"
#include "isacbeam/config.hpp"
#include "isacbeam/conic/solver.hpp"
#include "isacbeam/metrics.hpp"

namespace isacbeam {

// Per-iteration auxiliaries of the fractional-programming loop.
struct FPState {
  int iteration = 0;
  Eigen::VectorXd q;                    // K
  std::vector<Eigen::VectorXcd> z;      // K vectors of length N
  BeamformerSet beams;                  // W from the last P3 solve, w extracted
  Eigen::VectorXd r, eps, v;            // K
  Eigen::VectorXd lambda1, lambda2;     // K, nonnegative
  double ee_init = 0.0;                 // EE anchor before the first iteration
  std::vector<double> ee_trace;         // P3 objective per iteration
  std::vector<double> true_ee_trace;    // EE of the extracted rank-1 beams
  bool converged = false;
};

enum class RunStatus { converged, max_iters, infeasible, solver_failure };

std::string to_string(RunStatus s);

struct StageTiming {
  double p3_ms = 0.0;
  double p5_ms = 0.0;
  double extract_ms = 0.0;
};

struct RunResult {
  FPState state;
  RunStatus status = RunStatus::max_iters;
  StageTiming timing;
  int failed_iteration = -1;     // set for infeasible/solver_failure
  std::string diagnostics;       // constraint-family report on infeasibility
  bool ee_dip_detected = false;  // surrogate EE fell by more than 1%
};

// Dominant-singular-vector beamformers with even power split, q from the
// closed form, z from the nominal MMSE combiner.
FPState initialize(const SystemConfig& cfg, const ChannelSet& channels);

// sqrt(lambda_1) u_1 with the largest-modulus entry rotated to be real
// nonnegative (ties break on the lowest index).
Eigen::VectorXcd evd_extract(const Eigen::MatrixXcd& W);

enum class StepStatus { ok, infeasible, solver_failure };

struct IterationResult {
  FPState state;
  StepStatus status = StepStatus::ok;
  std::string diagnostics;
  std::vector<int> p5_failed_users;  // z kept from the previous iterate
  double fp_obj_before_q = 0.0;      // objective at (r, W) with the old q
  double fp_obj_after_q = 0.0;       // same point after the q update
  StageTiming timing;
};

IterationResult iterate_once(const FPState& state, const SystemConfig& cfg,
                             const ChannelSet& channels,
                             const conic::SolverSettings& solver);

RunResult run(const SystemConfig& cfg, const ChannelSet& channels,
              const conic::SolverSettings& solver = {});

}  // namespace isacbeam
