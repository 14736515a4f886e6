#pragma once

#include <cstdint>

namespace hcncov {

/// Version string reported in sweep metadata and the CLI.
inline constexpr const char* kVersion = "0.1.0";

inline double db_to_linear(double db) noexcept;
inline double linear_to_db(double v) noexcept;

/// Scenario parameters for a single-tier downlink network with randomly
/// placed multi-antenna base stations and additive residual transceiver
/// distortion. Distances are in km, densities in BS (or users) per km^2,
/// powers on a linear scale normalized to unit thermal-noise variance.
struct NetworkConfig {
  double lambda_b = 3.0;    ///< BS density, BS/km^2 (> 0)
  double lambda_u = 18.0;   ///< user density, users/km^2 (defaults to 6*lambda_b; informational)
  double alpha = 3.0;       ///< path-loss exponent (> 2)
  int m_antennas = 1;       ///< transmit antennas per BS, M >= 1
  int k_users = 1;          ///< users served per BS, 1 <= K <= M
  double delta_t = 0.0;     ///< transmit EVM proportionality, >= 0
  double delta_r = 0.0;     ///< receive EVM proportionality, >= 0
  double power = 1.0;       ///< per-user average transmit power, linear
  double noise_power = 0.0; ///< thermal noise, linear; 0 selects the pure-SIR model
  double target_sir = 1.0;  ///< coverage threshold T, linear

  /// Tie the distortion-power draws to the serving link's channel norm
  /// (the channel-level construction) instead of drawing independent
  /// Gamma(M,1) variates. Off by default: the closed-form bound factors
  /// the distortion transforms as if they were independent.
  bool correlated_distortion = false;

  /// Throws std::invalid_argument naming the violated invariant.
  void validate() const;
};

/// Diversity order of the desired-signal fading: M - K + 1.
int derived_delta(const NetworkConfig& cfg);

/// Shape/scale parametrization; mean = shape*scale, variance = shape*scale^2.
struct GammaParams {
  double shape = 1.0;
  double scale = 1.0;
  void validate() const;
};

/// Every term of the downlink SIR for one candidate serving BS.
struct SirTerms {
  double desired = 0.0;          ///< fading power h of the serving link
  double serving_distance = 1.0; ///< l = ||x||, km (> 0)
  double distortion_tx = 0.0;    ///< transmit distortion power
  double distortion_rx = 0.0;    ///< receive distortion power
  double interference = 0.0;     ///< sum of p*g*||y||^-alpha over the other BSs
};

/// SIR(N)R of a candidate link:
///   p*h*l^-a / ((I_t + I_r)*l^-a + I_other + noise).
/// Throws std::domain_error if every denominator term is zero; callers that
/// follow the covered-by-convention rule handle that case before calling.
double sir_from_terms(const SirTerms& t, const NetworkConfig& cfg);

namespace detail {
/// Hot-path SIR ratio. A fully degenerate denominator yields +infinity,
/// which the trial loop counts as covered for any finite target.
inline double sir_ratio(double power, double desired, double path_att,
                        double dist_tx, double dist_rx, double interference,
                        double noise) noexcept {
  const double den = (dist_tx + dist_rx) * path_att + interference + noise;
  if (den <= 0.0) return 1.0 / 0.0;
  return power * desired * path_att / den;
}
}  // namespace detail

}  // namespace hcncov

#include <cmath>

inline double hcncov::db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
inline double hcncov::linear_to_db(double v) noexcept { return 10.0 * std::log10(v); }
