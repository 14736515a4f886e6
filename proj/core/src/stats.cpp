#include "hcncov/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hcncov {

double gamma_cdf_int(int shape, double x) {
  if (shape < 1) throw std::invalid_argument("gamma_cdf_int requires shape >= 1");
  if (x <= 0.0) return 0.0;
  // Poisson-tail identity; exact for integer shape, stable for the shapes
  // used here (<= a few tens).
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < shape; ++j) {
    term *= x / j;
    sum += term;
  }
  return 1.0 - std::exp(-x) * sum;
}

double kolmogorov_q(double t) {
  if (t <= 0.0) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double e = std::exp(-2.0 * j * j * t * t);
    sum += (j % 2 == 1 ? e : -e);
    if (e < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test_gamma_int(std::vector<double> samples, int shape, double scale) {
  if (samples.empty()) throw std::invalid_argument("ks_test_gamma_int: empty sample");
  if (!(scale > 0.0)) throw std::invalid_argument("ks_test_gamma_int: scale must be positive");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = gamma_cdf_int(shape, samples[i] / scale);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, f - lo, hi - f});
  }
  // Stephens' finite-n adjustment of the asymptotic distribution.
  const double t = d * (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n));
  return KsResult{d, kolmogorov_q(t), samples.size()};
}

double normal_ci_halfwidth(double p_hat, std::size_t trials) {
  if (trials == 0) return 0.0;
  const double v = p_hat * (1.0 - p_hat) / static_cast<double>(trials);
  return 1.96 * std::sqrt(std::max(v, 0.0));
}

}  // namespace hcncov
