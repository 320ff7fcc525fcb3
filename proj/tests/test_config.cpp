#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "isacbeam/config.hpp"

using namespace isacbeam;

TEST_CASE("dbm_to_watts reference points") {
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dbm_to_watts(21.0) == doctest::Approx(0.125893).epsilon(1e-5));
  CHECK(dbm_to_watts(-100.0) == doctest::Approx(1e-13).epsilon(1e-12));
}

TEST_CASE("dbm round trip") {
  for (double x = -200.0; x <= 60.0; x += 7.3) {
    CHECK(watts_to_dbm(dbm_to_watts(x)) == doctest::Approx(x).epsilon(1e-9));
  }
}

TEST_CASE("normalize_scenario reproduces the reference unit system") {
  RawScenario raw;  // defaults carry the reference link budget
  const SystemConfig cfg = normalize_scenario(raw);
  CHECK(cfg.sigma_m2 == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(cfg.sigma_s2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cfg.P_max == doctest::Approx(dbm_to_watts(21.0)).epsilon(1e-12));
  CHECK(cfg.P_0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(cfg.alpha) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalize_scenario zero path loss keeps raw noise power") {
  RawScenario raw;
  raw.path_loss_comm_db = 0.0;
  const SystemConfig cfg = normalize_scenario(raw);
  CHECK(cfg.sigma_m2 == doctest::Approx(dbm_to_watts(raw.sigma_m_dbm)).epsilon(1e-12));
}

TEST_CASE("normalize_scenario rejects non-positive path loss") {
  RawScenario raw;
  raw.path_loss_comm_db = -std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(normalize_scenario(raw), std::invalid_argument);
}

TEST_CASE("normalize_scenario is scale consistent") {
  RawScenario a;
  RawScenario b = a;
  // Same factor on path loss and noise power (here +17 dB on both).
  b.path_loss_comm_db += 17.0;
  b.sigma_m_dbm += 17.0;
  b.path_loss_sense_db += 17.0;
  b.sigma_s_dbm += 17.0;
  const SystemConfig ca = normalize_scenario(a);
  const SystemConfig cb = normalize_scenario(b);
  CHECK(ca.sigma_m2 == doctest::Approx(cb.sigma_m2).epsilon(1e-12));
  CHECK(ca.sigma_s2 == doctest::Approx(cb.sigma_s2).epsilon(1e-12));
}

TEST_CASE("default config is the reference scenario and validates") {
  const SystemConfig cfg = default_config();
  CHECK(cfg.K == 3);
  CHECK(cfg.N == 2);
  CHECK(cfg.M_t == 8);
  CHECK(cfg.M_r == 10);
  CHECK(cfg.f.size() == 3);
  CHECK(cfg.theta == doctest::Approx(M_PI / 3.0));
  CHECK(cfg.P_max == doctest::Approx(dbm_to_watts(21.0)).epsilon(1e-9));
  CHECK(cfg.P_0 == doctest::Approx(1.0));
  CHECK(cfg.zeta[0] == doctest::Approx(0.01));
  CHECK(std::sqrt(cfg.rho) == doctest::Approx(0.0033).epsilon(1e-6));
  CHECK(cfg.L == 30);
  CHECK(cfg.p_con == doctest::Approx(1e-3));
  CHECK(cfg.max_iters == 30);
}

TEST_CASE("validate rejects broken invariants") {
  SystemConfig cfg = default_config();
  cfg.f = {0.5, 0.2, 0.2};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = default_config();
  cfg.M_r = cfg.M_t;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = default_config();
  cfg.P_max = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = default_config();
  cfg.phi = -0.1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = default_config();
  cfg.zeta = {0.01, -0.01, 0.01};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("config json round trip") {
  SystemConfig cfg = default_config();
  cfg.M_t = 6;
  cfg.M_r = 8;
  cfg.seed = 42;
  cfg.phi = 0.3;
  const SystemConfig back = parse_config(config_to_json(cfg));
  CHECK(back.M_t == 6);
  CHECK(back.M_r == 8);
  CHECK(back.seed == 42);
  CHECK(back.phi == doctest::Approx(0.3));
  CHECK(back.P_max == doctest::Approx(cfg.P_max).epsilon(1e-15));
}

TEST_CASE("config json rejects unknown keys") {
  CHECK_THROWS_AS(parse_config(R"({"K": 3, "bogus": 1})"), std::invalid_argument);
}

TEST_CASE("config json accepts raw-unit variants") {
  const SystemConfig cfg = parse_config(R"({
    "P_max_dbm": 21,
    "P_0_dbm": 30,
    "sigma_m_dbm": -100,
    "sigma_s_dbm": -90,
    "path_loss_comm_db": -120,
    "path_loss_sense_db": -120
  })");
  CHECK(cfg.sigma_m2 == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(cfg.sigma_s2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cfg.P_max == doctest::Approx(dbm_to_watts(21.0)).epsilon(1e-12));
}

TEST_CASE("config json defaults M_r to M_t + 2") {
  const SystemConfig cfg = parse_config(R"({"M_t": 12})");
  CHECK(cfg.M_r == 14);
}

TEST_CASE("config rho accepts inf for an unconstrained CRB") {
  const SystemConfig cfg = parse_config(R"({"rho": "inf"})");
  CHECK(!cfg.crb_constrained());
  const SystemConfig back = parse_config(config_to_json(cfg));
  CHECK(!back.crb_constrained());
}
