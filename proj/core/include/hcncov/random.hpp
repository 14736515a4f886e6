#pragma once

#include <cstdint>
#include <random>

#include "hcncov/config.hpp"

namespace hcncov {

/// One random stream. Workers and trials never share streams: a trial's
/// stream is derived from (seed, trial index) alone, so estimates do not
/// depend on scheduling or worker count.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : eng_(mix(seed)) {}

  static RandomStream for_trial(std::uint64_t seed, std::uint64_t trial_index) {
    // splitmix64 over the pair; distinct trials land in distinct states.
    return RandomStream(mix(seed) ^ mix(trial_index * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull));
  }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }

  double gamma(double shape, double scale = 1.0) {
    if (shape == 1.0) return -scale * std::log1p(-uniform());  // exponential
    return std::gamma_distribution<double>(shape, scale)(eng_);
  }

  /// Beta(a, b) draw; b == 0 is the degenerate point mass at 1 (needed for
  /// K = 1 and M = K) and consumes no engine state. Single-parameter shapes
  /// use the closed-form inverse CDF, the rest the two-gamma ratio.
  double beta(double a, double b) {
    if (b == 0.0) return 1.0;
    if (a == 1.0) return 1.0 - std::pow(1.0 - uniform(), 1.0 / b);
    if (b == 1.0) return std::pow(uniform(), 1.0 / a);
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
  }

  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    return std::poisson_distribution<std::uint64_t>(mean)(eng_);
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::mt19937_64 eng_;
};

double sample_gamma(const GammaParams& params, RandomStream& rng);

/// Beta(a, b) draw in [0,1]; b = 0 returns exactly 1.
double sample_beta(double a, double b, RandomStream& rng);

}  // namespace hcncov
