#pragma once

#include <cstddef>
#include <vector>

namespace hcncov {

/// Regularized lower incomplete gamma for integer shape:
/// P(Gamma(shape,1) <= x) = 1 - e^-x * sum_{j<shape} x^j/j!.
double gamma_cdf_int(int shape, double x);

/// Kolmogorov tail Q(t) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 t^2).
double kolmogorov_q(double t);

struct KsResult {
  double statistic = 0.0;  ///< sup |F_n - F|
  double p_value = 1.0;    ///< asymptotic, with Stephens' small-n correction
  std::size_t n = 0;
};

/// Two-sided KS test of samples against Gamma(shape, scale) with integer shape.
KsResult ks_test_gamma_int(std::vector<double> samples, int shape, double scale = 1.0);

/// Streaming mean/variance (Welford). Used by the optional early-stopping
/// estimator path.
class WelfordAccumulator {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// 95% normal-approximation half-width for a Bernoulli mean.
double normal_ci_halfwidth(double p_hat, std::size_t trials);

}  // namespace hcncov
