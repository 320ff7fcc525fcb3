#include "isacbeam/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace isacbeam {

using nlohmann::json;

double dbm_to_watts(double x_dbm) { return std::pow(10.0, (x_dbm - 30.0) / 10.0); }

double watts_to_dbm(double x_watts) { return 10.0 * std::log10(x_watts) + 30.0; }

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double SystemConfig::phi_k(int k) const {
  if (!phi_user.empty()) return phi_user.at(static_cast<std::size_t>(k));
  return phi;
}

bool SystemConfig::crb_constrained() const { return std::isfinite(rho); }

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

void require(bool ok, const std::string& msg) {
  if (!ok) fail(msg);
}

}  // namespace

void SystemConfig::validate() const {
  require(K >= 1, "K must be >= 1");
  require(N >= 1, "N must be >= 1");
  require(M_t >= 2, "M_t must be >= 2");
  require(M_t < M_r, "M_t must be < M_r");
  require(static_cast<int>(f.size()) == K, "f must have K entries");
  const double fsum = std::accumulate(f.begin(), f.end(), 0.0);
  require(std::abs(fsum - 1.0) <= 1e-12, "f must sum to 1");
  for (double fk : f) require(fk > 0.0, "all f_k must be > 0");
  require(static_cast<int>(zeta.size()) == K, "zeta must have K entries");
  for (double zk : zeta) require(std::isfinite(zk) && zk >= 0.0, "zeta_k must be >= 0");
  require(std::isfinite(P_max) && P_max > 0.0, "P_max must be > 0");
  require(std::isfinite(P_0) && P_0 > 0.0, "P_0 must be > 0");
  require(std::isfinite(phi) && phi >= 0.0, "phi must be >= 0");
  if (!phi_user.empty()) {
    require(static_cast<int>(phi_user.size()) == K, "phi_user must have K entries");
    for (double p : phi_user) require(std::isfinite(p) && p >= 0.0, "phi_k must be >= 0");
  }
  require(rho > 0.0 && !std::isnan(rho), "rho must be > 0");
  require(std::isfinite(sigma_m2) && sigma_m2 > 0.0, "sigma_m2 must be > 0");
  require(std::isfinite(sigma_s2) && sigma_s2 > 0.0, "sigma_s2 must be > 0");
  require(L >= 1, "L must be >= 1");
  require(bandwidth == 1.0, "bandwidth is fixed to 1");
  require(p_con > 0.0 && !std::isnan(p_con), "p_con must be > 0");
  require(max_iters >= 0, "max_iters must be >= 0");
  require(std::isfinite(theta), "theta must be finite");
  require(std::isfinite(alpha.real()) && std::isfinite(alpha.imag()) &&
              std::abs(alpha) > 0.0,
          "alpha must be finite and nonzero");
}

SystemConfig default_config() {
  SystemConfig cfg;
  cfg.validate();
  return cfg;
}

SystemConfig normalize_scenario(const RawScenario& raw, SystemConfig base) {
  const double pl_comm = db_to_linear(raw.path_loss_comm_db);
  const double pl_sense = db_to_linear(raw.path_loss_sense_db);
  require(std::isfinite(pl_comm) && pl_comm > 0.0, "non-positive communication path loss");
  require(std::isfinite(pl_sense) && pl_sense > 0.0, "non-positive sensing path loss");
  base.sigma_m2 = dbm_to_watts(raw.sigma_m_dbm) / pl_comm;
  base.sigma_s2 = dbm_to_watts(raw.sigma_s_dbm) / pl_sense;
  base.P_max = dbm_to_watts(raw.P_max_dbm);
  base.P_0 = dbm_to_watts(raw.P_0_dbm);
  base.alpha /= std::abs(base.alpha);
  return base;
}

namespace {

const char* const kKnownKeys[] = {
    "K",       "N",        "M_t",      "M_r",        "f",
    "theta",   "alpha",    "L",        "P_max",      "P_0",
    "zeta",    "phi",      "phi_user", "rho",        "sigma_m2",
    "sigma_s2","bandwidth","p_con",    "p_con_absolute", "max_iters",
    "seed",    "P_max_dbm","P_0_dbm",  "sigma_m_dbm","sigma_s_dbm",
    "path_loss_comm_db",   "path_loss_sense_db"};

bool known_key(const std::string& key) {
  for (const char* k : kKnownKeys)
    if (key == k) return true;
  return false;
}

double as_number(const json& j, const std::string& key) {
  if (j.is_string() && j.get<std::string>() == "inf")
    return std::numeric_limits<double>::infinity();
  if (!j.is_number()) fail("key '" + key + "' must be a number");
  return j.get<double>();
}

std::vector<double> as_vector(const json& j, const std::string& key) {
  std::vector<double> out;
  if (j.is_number()) {
    out.push_back(j.get<double>());
    return out;
  }
  if (!j.is_array()) fail("key '" + key + "' must be a number or array");
  for (const auto& e : j) out.push_back(as_number(e, key));
  return out;
}

}  // namespace

SystemConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("top level must be an object");

  for (const auto& item : j.items())
    if (!known_key(item.key())) fail("unknown key '" + item.key() + "'");

  SystemConfig cfg;
  RawScenario raw;
  bool any_raw = false;
  bool has_P_max = false, has_P_0 = false, has_sigma_m2 = false, has_sigma_s2 = false;
  bool has_M_r = false;

  if (j.contains("K")) cfg.K = static_cast<int>(as_number(j["K"], "K"));
  if (j.contains("N")) cfg.N = static_cast<int>(as_number(j["N"], "N"));
  if (j.contains("M_t")) cfg.M_t = static_cast<int>(as_number(j["M_t"], "M_t"));
  if (j.contains("M_r")) {
    cfg.M_r = static_cast<int>(as_number(j["M_r"], "M_r"));
    has_M_r = true;
  }
  if (!has_M_r) cfg.M_r = cfg.M_t + 2;

  if (j.contains("f")) cfg.f = as_vector(j["f"], "f");
  else if (cfg.K != 3) cfg.f.assign(cfg.K, 1.0 / cfg.K);

  if (j.contains("theta")) cfg.theta = as_number(j["theta"], "theta");
  if (j.contains("alpha")) {
    const auto& a = j["alpha"];
    if (a.is_number()) {
      cfg.alpha = {a.get<double>(), 0.0};
    } else if (a.is_array() && a.size() == 2) {
      cfg.alpha = {as_number(a[0], "alpha"), as_number(a[1], "alpha")};
    } else {
      fail("alpha must be a number or [re, im]");
    }
  }
  if (j.contains("L")) cfg.L = static_cast<int>(as_number(j["L"], "L"));

  if (j.contains("P_max")) { cfg.P_max = as_number(j["P_max"], "P_max"); has_P_max = true; }
  if (j.contains("P_0")) { cfg.P_0 = as_number(j["P_0"], "P_0"); has_P_0 = true; }
  if (j.contains("sigma_m2")) { cfg.sigma_m2 = as_number(j["sigma_m2"], "sigma_m2"); has_sigma_m2 = true; }
  if (j.contains("sigma_s2")) { cfg.sigma_s2 = as_number(j["sigma_s2"], "sigma_s2"); has_sigma_s2 = true; }

  if (j.contains("zeta")) {
    auto z = as_vector(j["zeta"], "zeta");
    cfg.zeta = (z.size() == 1) ? std::vector<double>(cfg.K, z[0]) : z;
  } else {
    cfg.zeta.assign(cfg.K, 0.01);
  }

  if (j.contains("phi")) {
    auto p = as_vector(j["phi"], "phi");
    if (p.size() == 1) {
      cfg.phi = p[0];
    } else {
      cfg.phi_user = p;
      cfg.phi = *std::max_element(p.begin(), p.end());
    }
  }
  if (j.contains("phi_user")) cfg.phi_user = as_vector(j["phi_user"], "phi_user");

  if (j.contains("rho")) cfg.rho = as_number(j["rho"], "rho");
  if (j.contains("bandwidth")) cfg.bandwidth = as_number(j["bandwidth"], "bandwidth");
  if (j.contains("p_con")) cfg.p_con = as_number(j["p_con"], "p_con");
  if (j.contains("p_con_absolute")) {
    if (!j["p_con_absolute"].is_boolean()) fail("p_con_absolute must be a boolean");
    cfg.p_con_absolute = j["p_con_absolute"].get<bool>();
  }
  if (j.contains("max_iters")) cfg.max_iters = static_cast<int>(as_number(j["max_iters"], "max_iters"));
  if (j.contains("seed")) {
    if (j["seed"].is_number_integer())
      cfg.seed = j["seed"].get<std::uint64_t>();
    else
      cfg.seed = static_cast<std::uint64_t>(as_number(j["seed"], "seed"));
  }

  // Raw-unit variants override normalized fields.
  if (j.contains("P_max_dbm")) { raw.P_max_dbm = as_number(j["P_max_dbm"], "P_max_dbm"); any_raw = true; }
  if (j.contains("P_0_dbm")) { raw.P_0_dbm = as_number(j["P_0_dbm"], "P_0_dbm"); any_raw = true; }
  if (j.contains("sigma_m_dbm")) { raw.sigma_m_dbm = as_number(j["sigma_m_dbm"], "sigma_m_dbm"); any_raw = true; }
  if (j.contains("sigma_s_dbm")) { raw.sigma_s_dbm = as_number(j["sigma_s_dbm"], "sigma_s_dbm"); any_raw = true; }
  if (j.contains("path_loss_comm_db")) { raw.path_loss_comm_db = as_number(j["path_loss_comm_db"], "path_loss_comm_db"); any_raw = true; }
  if (j.contains("path_loss_sense_db")) { raw.path_loss_sense_db = as_number(j["path_loss_sense_db"], "path_loss_sense_db"); any_raw = true; }

  if (any_raw) {
    SystemConfig normalized = normalize_scenario(raw, cfg);
    // Explicit normalized keys win over derived raw values.
    if (has_P_max) normalized.P_max = cfg.P_max;
    if (has_P_0) normalized.P_0 = cfg.P_0;
    if (has_sigma_m2) normalized.sigma_m2 = cfg.sigma_m2;
    if (has_sigma_s2) normalized.sigma_s2 = cfg.sigma_s2;
    cfg = normalized;
  }

  cfg.validate();
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const SystemConfig& cfg) {
  json j;
  j["K"] = cfg.K;
  j["N"] = cfg.N;
  j["M_t"] = cfg.M_t;
  j["M_r"] = cfg.M_r;
  j["f"] = cfg.f;
  j["theta"] = cfg.theta;
  j["alpha"] = {cfg.alpha.real(), cfg.alpha.imag()};
  j["L"] = cfg.L;
  j["P_max"] = cfg.P_max;
  j["P_0"] = cfg.P_0;
  j["zeta"] = cfg.zeta;
  j["phi"] = cfg.phi;
  if (!cfg.phi_user.empty()) j["phi_user"] = cfg.phi_user;
  if (std::isfinite(cfg.rho))
    j["rho"] = cfg.rho;
  else
    j["rho"] = "inf";
  j["sigma_m2"] = cfg.sigma_m2;
  j["sigma_s2"] = cfg.sigma_s2;
  j["bandwidth"] = cfg.bandwidth;
  if (std::isfinite(cfg.p_con))
    j["p_con"] = cfg.p_con;
  else
    j["p_con"] = "inf";
  j["p_con_absolute"] = cfg.p_con_absolute;
  j["max_iters"] = cfg.max_iters;
  j["seed"] = cfg.seed;
  return j.dump(2);
}

void save_config(const SystemConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write '" + path + "'");
  out << config_to_json(cfg) << "\n";
}

}  // namespace isacbeam
