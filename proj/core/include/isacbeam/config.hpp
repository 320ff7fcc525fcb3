#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace isacbeam {

// Scenario description in normalized units: channel entries are CN(0,1),
// noise powers are linear ratios against the path loss, transmit powers stay
// in watts. SINR, rate, EE and the CRB are invariant under that rescaling.
struct SystemConfig {
  int K = 3;        // users
  int N = 2;        // receive antennas per user
  int M_t = 8;      // transmit antennas
  int M_r = 10;     // sensing receive antennas (M_t + 2 unless set)
  std::vector<double> f = {0.3, 0.35, 0.35};  // EE weights, sum to 1
  double theta = 1.0471975511965976;          // target azimuth [rad], pi/3
  std::complex<double> alpha = {1.0, 0.0};    // normalized reflection coeff
  int L = 30;                                 // sensing frame length
  double P_max = 0.12589254117941673;         // per-user power cap [W], 21 dBm
  double P_0 = 1.0;                           // total fixed circuit power [W]
  std::vector<double> zeta = {0.01, 0.01, 0.01};  // SINR floors (linear)
  double phi = 0.1;                // spectral-norm channel error bound
  std::vector<double> phi_user;    // optional per-user override, empty = broadcast
  double rho = 1.0889e-5;          // CRB cap [rad^2], root-CRB 0.0033
  double sigma_m2 = 0.1;           // communication noise power (normalized)
  double sigma_s2 = 1.0;           // sensing noise power (normalized)
  double bandwidth = 1.0;          // [Hz], fixed to 1
  double p_con = 1e-3;             // EE convergence precision
  bool p_con_absolute = false;     // absolute |EE_j - EE_{j-1}| rule if true
  int max_iters = 30;              // outer-iteration cap
  std::uint64_t seed = 1;

  double phi_k(int k) const;
  double fixed_power_share() const { return P_0 / static_cast<double>(K); }
  bool crb_constrained() const;

  // Throws std::invalid_argument when any invariant is violated.
  void validate() const;
};

SystemConfig default_config();

double dbm_to_watts(double x_dbm);
double watts_to_dbm(double x_watts);
double db_to_linear(double x_db);

// Raw scenario figures as they appear in link budgets: dBm powers and dB
// path losses. normalize_scenario() folds them into the unit system above.
struct RawScenario {
  double sigma_m_dbm = -100.0;
  double sigma_s_dbm = -90.0;
  double path_loss_comm_db = -120.0;
  double path_loss_sense_db = -120.0;
  double P_max_dbm = 21.0;
  double P_0_dbm = 30.0;
};

SystemConfig normalize_scenario(const RawScenario& raw,
                                SystemConfig base = SystemConfig{});

// Flat JSON config files. Keys are the SystemConfig field names; raw-unit
// variants carry a _dbm/_db suffix and are converted at load. Unknown keys
// are rejected.
SystemConfig load_config(const std::string& path);
SystemConfig parse_config(const std::string& json_text);
std::string config_to_json(const SystemConfig& cfg);
void save_config(const SystemConfig& cfg, const std::string& path);

}  // namespace isacbeam
