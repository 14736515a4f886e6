#include "hcncov/random.hpp"

#include <stdexcept>

namespace hcncov {

double sample_gamma(const GammaParams& params, RandomStream& rng) {
  params.validate();
  return rng.gamma(params.shape, params.scale);
}

double sample_beta(double a, double b, RandomStream& rng) {
  if (!(a > 0.0)) throw std::invalid_argument("beta parameter a must be positive");
  if (!(b >= 0.0)) throw std::invalid_argument("beta parameter b must be nonnegative");
  return rng.beta(a, b);
}

}  // namespace hcncov
