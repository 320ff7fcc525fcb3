#include "isacbeam/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "isacbeam/channel.hpp"
#include "isacbeam/verify.hpp"
#include "json.hpp"

namespace isacbeam {

namespace {

constexpr std::uint64_t kAuditStream = 0xa0d17;

void apply_sweep_value(SystemConfig& cfg, SweepKind kind, double value) {
  switch (kind) {
    case SweepKind::convergence:
      cfg.M_t = static_cast<int>(value);
      cfg.M_r = cfg.M_t + 2;
      break;
    case SweepKind::crb_sweep:
      cfg.rho = value * value;  // grid carries root-CRB values
      break;
    case SweepKind::phi_sweep:
      cfg.phi = value;
      cfg.phi_user.clear();
      break;
  }
}

SweepRow run_cell(const SweepSpec& spec, double value, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepRow row;
  row.sweep_value = value;
  row.seed = seed;

  SystemConfig cfg = spec.base;
  apply_sweep_value(cfg, spec.kind, value);
  cfg.seed = seed;
  cfg.validate();

  Rng rng(seed);
  const ChannelSet channels = generate_channels(cfg, rng);
  const RunResult result = isacbeam::run(cfg, channels, spec.solver);

  row.status = to_string(result.status);
  row.iterations = result.state.iteration;
  if (spec.kind == SweepKind::convergence) row.ee_trace = result.state.ee_trace;
  row.ee_final = result.state.ee_trace.empty()
                     ? std::numeric_limits<double>::quiet_NaN()
                     : result.state.ee_trace.back();

  if (result.status == RunStatus::converged) {
    const SteeringContext ctx = build_steering_context(cfg);
    const auto [crb, crb_ok] = crb_audit(result.state.beams, ctx, cfg);
    (void)crb_ok;
    row.crb_achieved = crb;
    double max_ratio = 0.0;
    for (int k = 0; k < cfg.K; ++k)
      max_ratio = std::max(max_ratio, rank_one_ratio(result.state.beams.W[k]));
    row.max_rank_ratio = max_ratio;
    Rng audit_rng = Rng(seed).fork(kAuditStream);
    const Eigen::VectorXd worst = robust_sinr_check(
        result.state.beams, channels, cfg, spec.robust_samples, audit_rng);
    row.min_robust_sinr = worst.minCoeff();
  } else {
    row.crb_achieved = std::numeric_limits<double>::quiet_NaN();
    row.min_robust_sinr = std::numeric_limits<double>::quiet_NaN();
    row.max_rank_ratio = std::numeric_limits<double>::quiet_NaN();
  }

  row.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  struct Cell {
    double value;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (double v : spec.grid)
    for (std::uint64_t s : spec.seeds) cells.push_back({v, s});

  std::vector<SweepRow> rows(cells.size());
  unsigned n_threads = spec.n_threads > 0
                           ? static_cast<unsigned>(spec.n_threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, cells.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) break;
      rows[i] = run_cell(spec, cells[i].value, cells[i].seed);
    }
  };
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

}  // namespace

void SweepSpec::validate() const {
  if (grid.empty()) throw std::invalid_argument("sweep: grid must be non-empty");
  if (seeds.empty()) throw std::invalid_argument("sweep: seeds must be non-empty");
  if (kind == SweepKind::convergence) {
    for (double v : grid) {
      if (v != std::floor(v) || v < 2)
        throw std::invalid_argument("sweep: M_t grid entries must be integers >= 2");
    }
  } else {
    for (double v : grid)
      if (!(v > 0))
        throw std::invalid_argument("sweep: grid entries must be positive");
  }
  if (robust_samples < 1)
    throw std::invalid_argument("sweep: robust_samples must be >= 1");
}

std::vector<SweepRow> run_convergence(const SweepSpec& spec) {
  if (spec.kind != SweepKind::convergence)
    throw std::invalid_argument("run_convergence: wrong sweep kind");
  return run_sweep(spec);
}

std::vector<SweepRow> run_crb_sweep(const SweepSpec& spec) {
  if (spec.kind != SweepKind::crb_sweep)
    throw std::invalid_argument("run_crb_sweep: wrong sweep kind");
  return run_sweep(spec);
}

std::vector<SweepRow> run_phi_sweep(const SweepSpec& spec) {
  if (spec.kind != SweepKind::phi_sweep)
    throw std::invalid_argument("run_phi_sweep: wrong sweep kind");
  return run_sweep(spec);
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string join_trace(const std::vector<double>& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i) out += ";";
    out += fmt(trace[i]);
  }
  return out;
}

}  // namespace

std::string rows_to_csv(const std::vector<SweepRow>& rows, bool with_trace) {
  std::ostringstream out;
  out << "sweep_value,seed,iterations,ee_final,crb_achieved,min_robust_sinr,"
         "max_rank_ratio,status,wall_ms";
  if (with_trace) out << ",ee_trace";
  out << "\n";
  for (const auto& r : rows) {
    out << fmt(r.sweep_value) << "," << r.seed << "," << r.iterations << ","
        << fmt(r.ee_final) << "," << fmt(r.crb_achieved) << ","
        << fmt(r.min_robust_sinr) << "," << fmt(r.max_rank_ratio) << ","
        << r.status << ",";
    char wall[32];
    std::snprintf(wall, sizeof(wall), "%.3f", r.wall_ms);
    out << wall;
    if (with_trace) out << "," << join_trace(r.ee_trace);
    out << "\n";
  }
  return out.str();
}

std::string rows_to_json(const std::vector<SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  auto num = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
  };
  for (const auto& r : rows) {
    nlohmann::json j;
    j["sweep_value"] = r.sweep_value;
    j["seed"] = r.seed;
    j["iterations"] = r.iterations;
    j["ee_final"] = num(r.ee_final);
    if (!r.ee_trace.empty()) j["ee_trace"] = r.ee_trace;
    j["crb_achieved"] = num(r.crb_achieved);
    j["min_robust_sinr"] = num(r.min_robust_sinr);
    j["max_rank_ratio"] = num(r.max_rank_ratio);
    j["status"] = r.status;
    j["wall_ms"] = r.wall_ms;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

std::vector<SweepRow> rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: empty input");
  const bool with_trace = line.find(",ee_trace") != std::string::npos;

  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    // A convergence row's trailing trace may itself be empty.
    const std::size_t expected = with_trace ? 10u : 9u;
    if (fields.size() == 9 && with_trace) fields.push_back("");
    if (fields.size() != expected)
      throw std::invalid_argument("csv: bad row '" + line + "'");
    SweepRow r;
    r.sweep_value = std::stod(fields[0]);
    r.seed = std::stoull(fields[1]);
    r.iterations = std::stoi(fields[2]);
    r.ee_final = std::stod(fields[3]);
    r.crb_achieved = std::stod(fields[4]);
    r.min_robust_sinr = std::stod(fields[5]);
    r.max_rank_ratio = std::stod(fields[6]);
    r.status = fields[7];
    r.wall_ms = std::stod(fields[8]);
    if (with_trace && !fields[9].empty()) {
      std::istringstream ts(fields[9]);
      std::string tok;
      while (std::getline(ts, tok, ';')) r.ee_trace.push_back(std::stod(tok));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit(const std::vector<SweepRow>& rows, const std::string& path,
          EmitFormat format) {
  if (rows.empty()) throw std::invalid_argument("emit: no rows");
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("emit: cannot write '" + path + "'");
  if (format == EmitFormat::csv) {
    bool with_trace = false;
    for (const auto& r : rows) with_trace = with_trace || !r.ee_trace.empty();
    out << rows_to_csv(rows, with_trace);
  } else {
    out << rows_to_json(rows) << "\n";
  }
  if (!out) throw std::runtime_error("emit: write failed for '" + path + "'");
}

}  // namespace isacbeam
