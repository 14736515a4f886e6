#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hcncov/config.hpp"
#include "hcncov/random.hpp"

namespace hcncov {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Simulation window, centered on the origin where the typical user sits.
struct Window {
  double width_km = 5.0;
  double height_km = 6.0;
  double area() const { return width_km * height_km; }
  void validate() const;  // throws on non-positive dimensions
  /// True when lambda_b * area >= 20; below that boundary effects dominate
  /// and callers should warn.
  bool adequately_sized(double lambda_b) const { return lambda_b * area() >= 20.0; }
};

/// One sampled network. Each BS carries a single channel realization to the
/// typical user: norm_sq is its squared channel norm (Gamma(M,1)); the BS's
/// role in a trial selects the functional of it,
///   serving:    h = serve_frac * norm_sq   (serve_frac ~ Beta(M-K+1, K-1))
///   interfering: g = interf_frac * norm_sq (interf_frac ~ Beta(K, M-K)),
/// which reproduces the Gamma(M-K+1,1) / Gamma(K,1) marginals exactly.
/// dist_tx/dist_rx are the independent Gamma(M,1) distortion variates used
/// unless correlated_distortion ties the distortions to norm_sq instead.
struct Realization {
  std::vector<Point> positions;
  std::vector<double> norm_sq;
  std::vector<double> serve_frac;
  std::vector<double> interf_frac;
  std::vector<double> dist_tx;
  std::vector<double> dist_rx;
  std::size_t size() const { return positions.size(); }
  void clear();
};

/// Point count ~ Poisson(lambda_b * area), locations i.i.d. uniform.
std::vector<Point> sample_ppp(double lambda_b, const Window& window, RandomStream& rng);

void sample_realization(const NetworkConfig& cfg, const Window& window,
                        RandomStream& rng, Realization& out);

struct TrialResult {
  bool covered = false;
  double max_sir = 0.0;  ///< +inf in the degenerate all-zero-denominator case
};

/// Max-SIR coverage for one realization: every BS is tried as the server,
/// all others interfere, covered iff max SIR > target. A candidate whose
/// denominator is entirely zero (no interferer, no distortion, no noise)
/// counts as covered.
TrialResult evaluate_coverage(const Realization& real, const NetworkConfig& cfg);

/// Samples a fresh realization and evaluates it.
TrialResult trial_coverage(const NetworkConfig& cfg, const Window& window, RandomStream& rng);

struct CoverageEstimate {
  double p_hat = 0.0;
  std::size_t trials = 0;
  double ci_halfwidth = 0.0;  ///< 1.96 sqrt(p(1-p)/n)
  std::uint64_t seed = 0;
};

/// Monte Carlo coverage estimate over independent realizations. Deterministic
/// for a fixed seed regardless of worker count (workers = 0 picks the
/// hardware concurrency).
CoverageEstimate estimate_coverage(const NetworkConfig& cfg, const Window& window,
                                   std::size_t trials, std::uint64_t seed,
                                   unsigned workers = 0);

/// Common-random-numbers estimation: all configs must share lambda_b,
/// m_antennas and k_users; every config is evaluated on the same realization
/// per trial (same draws), so monotonicity in target/impairments holds
/// per-trial exactly. Configs differing only in target_sir share the
/// candidate-SIR evaluation.
std::vector<CoverageEstimate> estimate_coverage_multi(std::span<const NetworkConfig> cfgs,
                                                      const Window& window,
                                                      std::size_t trials, std::uint64_t seed,
                                                      unsigned workers = 0);

/// Per-trial max-SIR samples (trial index order), for dominance checks and
/// threshold sweeps on frozen draws.
std::vector<double> max_sir_samples(const NetworkConfig& cfg, const Window& window,
                                    std::size_t trials, std::uint64_t seed,
                                    unsigned workers = 0);

/// Single-threaded streaming estimator with optional early stop once the 95%
/// CI half-width drops below target_ci (checked every 1024 trials);
/// target_ci <= 0 disables stopping. Off the default path.
CoverageEstimate estimate_coverage_streaming(const NetworkConfig& cfg, const Window& window,
                                             std::size_t max_trials, std::uint64_t seed,
                                             double target_ci = 0.0);

}  // namespace hcncov
