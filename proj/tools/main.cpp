// Command line driver for the robust EE beamforming experiments: convergence
// curves, root-CRB/EE trade-off sweeps, channel-uncertainty sweeps and a
// single-run verification report.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isacbeam/channel.hpp"
#include "isacbeam/config.hpp"
#include "isacbeam/optimizer.hpp"
#include "isacbeam/sweep.hpp"
#include "isacbeam/verify.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  int max_iters = -1;
  double pcon = -1.0;
  int threads = 0;
  int samples = 1000;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Scenario config file (JSON)");
  cmd->add_option("--seeds", args.seeds, "RNG seeds, one run per seed")
      ->delimiter(',');
  cmd->add_option("--out", args.out_path, "Output path (default: stdout)");
  cmd->add_option("--format", args.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--max-iters", args.max_iters, "Outer-iteration cap");
  cmd->add_option("--pcon", args.pcon, "EE convergence precision");
  cmd->add_option("--threads", args.threads, "Worker threads (0 = all cores)");
  cmd->add_option("--samples", args.samples, "Robustness audit sample count");
}

isacbeam::SystemConfig base_config(const CommonArgs& args) {
  isacbeam::SystemConfig cfg = args.config_path.empty()
                                   ? isacbeam::default_config()
                                   : isacbeam::load_config(args.config_path);
  if (args.max_iters >= 0) cfg.max_iters = args.max_iters;
  if (args.pcon > 0.0) cfg.p_con = args.pcon;
  return cfg;
}

int emit_rows(const std::vector<isacbeam::SweepRow>& rows, const CommonArgs& args) {
  const auto format = args.format == "json" ? isacbeam::EmitFormat::json
                                            : isacbeam::EmitFormat::csv;
  if (args.out_path.empty()) {
    if (format == isacbeam::EmitFormat::csv) {
      bool with_trace = false;
      for (const auto& r : rows) with_trace = with_trace || !r.ee_trace.empty();
      std::cout << isacbeam::rows_to_csv(rows, with_trace);
    } else {
      std::cout << isacbeam::rows_to_json(rows) << "\n";
    }
  } else {
    isacbeam::emit(rows, args.out_path, format);
  }
  int failed = 0;
  for (const auto& r : rows)
    if (r.status != "converged") ++failed;
  if (failed > 0) {
    std::cerr << failed << "/" << rows.size() << " cells did not converge\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-efficiency-optimal robust ISAC beamforming experiments"};
  app.require_subcommand(1);

  CommonArgs conv_args, crb_args, phi_args, verify_args;
  std::vector<int> mt_grid = {6, 8, 10, 12, 14};
  std::vector<double> root_crb_grid = {0.002, 0.0033, 0.006, 0.01};
  std::vector<double> phi_grid = {0.05, 0.1, 0.15, 0.2, 0.25,
                                  0.3, 0.35, 0.4, 0.45, 0.5};
  double crb_phi = 0.3;
  double phi_root_crb = 0.0033;
  int verify_mt = -1;

  CLI::App* conv = app.add_subcommand(
      "converge", "Convergence runs over a transmit-antenna grid");
  add_common(conv, conv_args);
  conv->add_option("--mt", mt_grid, "Transmit antenna counts")->delimiter(',');

  CLI::App* crb = app.add_subcommand(
      "sweep-crb", "EE versus root-CRB cap at fixed channel uncertainty");
  add_common(crb, crb_args);
  crb->add_option("--root-crb", root_crb_grid, "Root-CRB grid [rad]")
      ->delimiter(',');
  crb->add_option("--phi", crb_phi, "Channel uncertainty bound");
  int crb_mt = -1;
  crb->add_option("--mt", crb_mt, "Transmit antennas (single value)");

  CLI::App* phi = app.add_subcommand(
      "sweep-phi", "EE versus channel uncertainty at a fixed root-CRB cap");
  add_common(phi, phi_args);
  phi->add_option("--phi", phi_grid, "Channel uncertainty grid")->delimiter(',');
  phi->add_option("--root-crb", phi_root_crb, "Root-CRB cap [rad]");
  int phi_mt = -1;
  phi->add_option("--mt", phi_mt, "Transmit antennas (single value)");

  CLI::App* verify = app.add_subcommand(
      "verify", "Run one scenario and emit the verification report (JSON)");
  add_common(verify, verify_args);
  verify->add_option("--mt", verify_mt, "Transmit antennas (single value)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (conv->parsed()) {
      isacbeam::SweepSpec spec;
      spec.kind = isacbeam::SweepKind::convergence;
      for (int m : mt_grid) spec.grid.push_back(m);
      spec.seeds = conv_args.seeds;
      spec.base = base_config(conv_args);
      spec.robust_samples = conv_args.samples;
      spec.n_threads = conv_args.threads;
      return emit_rows(isacbeam::run_convergence(spec), conv_args);
    }
    if (crb->parsed()) {
      isacbeam::SweepSpec spec;
      spec.kind = isacbeam::SweepKind::crb_sweep;
      spec.grid = root_crb_grid;
      spec.seeds = crb_args.seeds;
      spec.base = base_config(crb_args);
      if (crb->count("--phi") > 0 || crb_args.config_path.empty())
        spec.base.phi = crb_phi;
      if (crb_mt > 0) {
        spec.base.M_t = crb_mt;
        spec.base.M_r = crb_mt + 2;
      }
      spec.robust_samples = crb_args.samples;
      spec.n_threads = crb_args.threads;
      return emit_rows(isacbeam::run_crb_sweep(spec), crb_args);
    }
    if (phi->parsed()) {
      isacbeam::SweepSpec spec;
      spec.kind = isacbeam::SweepKind::phi_sweep;
      spec.grid = phi_grid;
      spec.seeds = phi_args.seeds;
      spec.base = base_config(phi_args);
      if (phi->count("--root-crb") > 0 || phi_args.config_path.empty())
        spec.base.rho = phi_root_crb * phi_root_crb;
      if (phi_mt > 0) {
        spec.base.M_t = phi_mt;
        spec.base.M_r = phi_mt + 2;
      }
      spec.robust_samples = phi_args.samples;
      spec.n_threads = phi_args.threads;
      return emit_rows(isacbeam::run_phi_sweep(spec), phi_args);
    }
    // verify
    isacbeam::SystemConfig cfg = base_config(verify_args);
    if (verify_mt > 0) {
      cfg.M_t = verify_mt;
      cfg.M_r = verify_mt + 2;
    }
    cfg.seed = verify_args.seeds.front();
    cfg.validate();
    isacbeam::Rng rng(cfg.seed);
    const isacbeam::ChannelSet channels = isacbeam::generate_channels(cfg, rng);
    const isacbeam::RunResult result = isacbeam::run(cfg, channels);
    if (result.status != isacbeam::RunStatus::converged) {
      std::cerr << "run did not converge: " << to_string(result.status);
      if (!result.diagnostics.empty()) std::cerr << " (" << result.diagnostics << ")";
      std::cerr << "\n";
      return 2;
    }
    isacbeam::Rng audit_rng = isacbeam::Rng(cfg.seed).fork(0xa0d17);
    const isacbeam::VerificationReport report = isacbeam::full_report(
        result, channels, cfg, audit_rng, verify_args.samples);
    const std::string text = isacbeam::report_to_json(report);
    if (verify_args.out_path.empty()) {
      std::cout << text << "\n";
    } else {
      std::ofstream out(verify_args.out_path);
      if (!out) throw std::runtime_error("cannot write '" + verify_args.out_path + "'");
      out << text << "\n";
    }
    const bool ok = report.crb_ok && report.power_ok && report.sinr_ok;
    return ok ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
