#include "hcncov/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hcncov {

namespace {
[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }
}  // namespace

void NetworkConfig::validate() const {
  if (!(lambda_b > 0.0) || !std::isfinite(lambda_b)) fail("lambda_b must be positive");
  if (!(lambda_u >= 0.0)) fail("lambda_u must be nonnegative");
  if (!(alpha > 2.0)) fail("alpha must exceed 2");
  if (m_antennas < 1) fail("m_antennas must be at least 1");
  if (k_users < 1) fail("k_users must be at least 1");
  if (k_users > m_antennas) fail("k_users must not exceed m_antennas");
  if (!(delta_t >= 0.0)) fail("delta_t must be nonnegative");
  if (!(delta_r >= 0.0)) fail("delta_r must be nonnegative");
  if (!(power > 0.0)) fail("power must be positive");
  if (!(noise_power >= 0.0)) fail("noise_power must be nonnegative");
  if (!(target_sir >= 0.0)) fail("target_sir must be nonnegative");
}

int derived_delta(const NetworkConfig& cfg) {
  cfg.validate();
  return cfg.m_antennas - cfg.k_users + 1;
}

void GammaParams::validate() const {
  if (!(shape > 0.0)) fail("gamma shape must be positive");
  if (!(scale > 0.0)) fail("gamma scale must be positive");
}

double sir_from_terms(const SirTerms& t, const NetworkConfig& cfg) {
  if (!(t.serving_distance > 0.0)) fail("serving_distance must be positive");
  if (t.desired < 0.0 || t.distortion_tx < 0.0 || t.distortion_rx < 0.0 || t.interference < 0.0)
    fail("SIR terms must be nonnegative");
  const double att = std::pow(t.serving_distance, -cfg.alpha);
  const double den =
      (t.distortion_tx + t.distortion_rx) * att + t.interference + cfg.noise_power;
  if (den <= 0.0)
    throw std::domain_error("degenerate SIR denominator: no interference, distortion or noise");
  return cfg.power * t.desired * att / den;
}

}  // namespace hcncov
