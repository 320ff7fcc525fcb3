#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isacbeam/config.hpp"
#include "isacbeam/conic/solver.hpp"
#include "isacbeam/optimizer.hpp"

namespace isacbeam {

enum class SweepKind { convergence, crb_sweep, phi_sweep };

// One experiment: a grid of swept values (M_t counts, root-CRB values or phi
// values depending on kind) crossed with RNG seeds over a base scenario.
struct SweepSpec {
  SweepKind kind = SweepKind::convergence;
  std::vector<double> grid;
  std::vector<std::uint64_t> seeds;
  SystemConfig base;
  conic::SolverSettings solver;
  int robust_samples = 1000;  // per-cell robustness audit
  int n_threads = 0;          // 0 = hardware concurrency

  void validate() const;  // throws std::invalid_argument
};

struct SweepRow {
  double sweep_value = 0.0;
  std::uint64_t seed = 0;
  int iterations = 0;
  double ee_final = 0.0;
  std::vector<double> ee_trace;  // populated for convergence sweeps only
  double crb_achieved = 0.0;
  double min_robust_sinr = 0.0;
  double max_rank_ratio = 0.0;
  std::string status;
  double wall_ms = 0.0;
};

std::vector<SweepRow> run_convergence(const SweepSpec& spec);
std::vector<SweepRow> run_crb_sweep(const SweepSpec& spec);
std::vector<SweepRow> run_phi_sweep(const SweepSpec& spec);

enum class EmitFormat { csv, json };

std::string rows_to_csv(const std::vector<SweepRow>& rows, bool with_trace);
std::string rows_to_json(const std::vector<SweepRow>& rows);
std::vector<SweepRow> rows_from_csv(const std::string& text);

// Writes rows to path; format csv or json. Throws on empty rows or
// unwritable paths. The trace column is emitted when any row carries one.
void emit(const std::vector<SweepRow>& rows, const std::string& path,
          EmitFormat format);

}  // namespace isacbeam
