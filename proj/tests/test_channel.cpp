#include <cmath>

#include "doctest.h"
#include "isacbeam/channel.hpp"

using namespace isacbeam;

namespace {

double spectral_norm(const Eigen::MatrixXcd& M) {
  return M.jacobiSvd().singularValues()(0);
}

}  // namespace

TEST_CASE("generate_channels shape and determinism") {
  SystemConfig cfg = default_config();
  cfg.seed = 7;
  Rng rng_a(cfg.seed), rng_b(cfg.seed);
  const ChannelSet a = generate_channels(cfg, rng_a);
  const ChannelSet b = generate_channels(cfg, rng_b);
  REQUIRE(a.H_hat.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(a.H_hat[k].rows() == 2);
    CHECK(a.H_hat[k].cols() == 8);
    CHECK((a.H_hat[k] - b.H_hat[k]).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("generated entries have unit average power") {
  SystemConfig cfg = default_config();
  cfg.K = 1;
  cfg.N = 100;
  cfg.M_t = 100;
  cfg.M_r = 102;
  cfg.f = {1.0};
  cfg.zeta = {0.01};
  Rng rng(123);
  const ChannelSet ch = generate_channels(cfg, rng);
  const double mean_power = ch.H_hat[0].cwiseAbs2().mean();
  CHECK(mean_power > 0.97);
  CHECK(mean_power < 1.03);
}

TEST_CASE("sample_error respects the spectral-norm ball") {
  Rng rng(5);
  SUBCASE("phi zero gives the zero matrix") {
    const auto delta = sample_error(2, 8, 0.0, ErrorMode::interior, rng);
    CHECK(delta.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("boundary mode hits the sphere") {
    for (int i = 0; i < 20; ++i) {
      const auto delta = sample_error(2, 8, 0.3, ErrorMode::boundary, rng);
      CHECK(spectral_norm(delta) == doctest::Approx(0.3).epsilon(1e-10));
    }
  }
  SUBCASE("interior mode stays inside") {
    for (int i = 0; i < 50; ++i) {
      const auto delta = sample_error(3, 5, 0.4, ErrorMode::interior, rng);
      CHECK(spectral_norm(delta) <= 0.4 + 1e-10);
    }
  }
}

TEST_CASE("ball closure under shrinking") {
  Rng rng(11);
  const double phi = 0.25;
  const auto delta = sample_error(2, 6, phi, ErrorMode::boundary, rng);
  for (double c : {0.0, 0.3, 0.7, 1.0}) {
    CHECK(spectral_norm(c * delta) <= phi + 1e-10);
  }
}

TEST_CASE("channel dump/load round trip") {
  SystemConfig cfg = default_config();
  cfg.phi = 0.3;
  Rng rng(77);
  const ChannelSet ch = generate_channels(cfg, rng);
  const ChannelSet back = parse_channels(dump_channels(ch));
  CHECK(back.phi == ch.phi);
  REQUIRE(back.H_hat.size() == ch.H_hat.size());
  for (std::size_t k = 0; k < ch.H_hat.size(); ++k) {
    CHECK((back.H_hat[k] - ch.H_hat[k]).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("parse_channels rejects malformed input") {
  CHECK_THROWS_AS(parse_channels(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_channels("1 2 2 0.1\n0,0 0,0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_channels("1 1 1 0.1\nnot-a-pair\n"), std::invalid_argument);
}
