#include <doctest.h>

#include <stdexcept>

#include "hcncov/config.hpp"
#include "hcncov/random.hpp"

using namespace hcncov;

TEST_SUITE_BEGIN("config");

namespace {
NetworkConfig base_cfg() {
  NetworkConfig c;
  c.lambda_b = 3.0;
  c.lambda_u = 18.0;
  c.alpha = 4.0;
  c.m_antennas = 1;
  c.k_users = 1;
  c.power = 1.0;
  c.target_sir = 1.0;
  return c;
}
}  // namespace

TEST_CASE("derived_delta for the three transmission strategies") {
  NetworkConfig c = base_cfg();
  c.m_antennas = 6;
  c.k_users = 1;
  CHECK(derived_delta(c) == 6);  // single-user beamforming
  c.m_antennas = 1;
  CHECK(derived_delta(c) == 1);  // SISO
  c.m_antennas = 6;
  c.k_users = 6;
  CHECK(derived_delta(c) == 1);  // full SDMA
}

TEST_CASE("validation rejects out-of-domain parameters") {
  NetworkConfig c = base_cfg();
  c.alpha = 2.0;
  CHECK_THROWS_WITH_AS(c.validate(), "alpha must exceed 2", std::invalid_argument);
  c = base_cfg();
  c.k_users = 2;  // K > M
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = base_cfg();
  c.lambda_b = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = base_cfg();
  c.delta_t = -0.1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = base_cfg();
  c.target_sir = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK_NOTHROW(base_cfg().validate());
}

TEST_CASE("sir_from_terms matches hand-computed ratios") {
  NetworkConfig c = base_cfg();
  SirTerms t;
  t.desired = 1.0;
  t.serving_distance = 1.0;
  t.interference = 1.0;
  CHECK(sir_from_terms(t, c) == doctest::Approx(1.0).epsilon(1e-12));

  // l^-alpha = 1/16 cancels against the interference
  t.desired = 2.0;
  t.serving_distance = 2.0;
  t.interference = 1.0 / 16.0;
  CHECK(sir_from_terms(t, c) == doctest::Approx(2.0).epsilon(1e-12));

  // transmit distortion at its mean p*delta_t^2*M, delta_t = 0.15, M = 1
  t = SirTerms{};
  t.desired = 1.0;
  t.serving_distance = 1.0;
  t.distortion_tx = 0.0225;
  t.interference = 1.0;
  CHECK(sir_from_terms(t, c) == doctest::Approx(1.0 / 1.0225).epsilon(1e-12));
}

TEST_CASE("noise enters the denominator when enabled") {
  NetworkConfig c = base_cfg();
  c.noise_power = 1.0;
  SirTerms t;
  t.desired = 1.0;
  t.serving_distance = 1.0;
  CHECK(sir_from_terms(t, c) == doctest::Approx(1.0));
  c.noise_power = 0.0;
  CHECK_THROWS_AS(sir_from_terms(t, c), std::domain_error);  // fully degenerate denominator
}

TEST_CASE("increasing either impairment strictly lowers the SIR") {
  NetworkConfig c = base_cfg();
  RandomStream rng(42);
  for (int i = 0; i < 200; ++i) {
    const double g_t = rng.gamma(3.0);
    const double g_r = rng.gamma(3.0);
    SirTerms lo, hi;
    lo.desired = hi.desired = rng.gamma(2.0) + 1e-6;
    lo.serving_distance = hi.serving_distance = rng.uniform(0.05, 2.0);
    lo.interference = hi.interference = rng.gamma(1.0);
    const double p = c.power;
    lo.distortion_tx = p * 0.05 * 0.05 * g_t;
    hi.distortion_tx = p * 0.15 * 0.15 * g_t;
    lo.distortion_rx = hi.distortion_rx = p * 0.1 * 0.1 * g_r;
    if (g_t > 0.0) CHECK(sir_from_terms(hi, c) < sir_from_terms(lo, c));
  }
}

TEST_CASE("dB conversion") {
  CHECK(db_to_linear(23.0) == doctest::Approx(199.52623149688797).epsilon(1e-12));
  CHECK(linear_to_db(db_to_linear(7.5)) == doctest::Approx(7.5).epsilon(1e-12));
  CHECK(db_to_linear(0.0) == 1.0);
}

TEST_SUITE_END();
