#include <doctest.h>

#include <cmath>
#include <vector>

#include "hcncov/random.hpp"
#include "hcncov/stats.hpp"

using namespace hcncov;

TEST_SUITE_BEGIN("stats");

TEST_CASE("integer-shape gamma CDF against closed forms") {
  CHECK(gamma_cdf_int(1, 2.0) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
  CHECK(gamma_cdf_int(2, 2.0) ==
        doctest::Approx(1.0 - 3.0 * std::exp(-2.0)).epsilon(1e-14));
  CHECK(gamma_cdf_int(6, 0.0) == 0.0);
  CHECK(gamma_cdf_int(6, -1.0) == 0.0);
  CHECK(gamma_cdf_int(3, 1e3) == doctest::Approx(1.0).epsilon(1e-14));
  // monotone in x
  double prev = 0.0;
  for (double x = 0.1; x < 20.0; x += 0.37) {
    const double v = gamma_cdf_int(4, x);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("Kolmogorov tail values") {
  CHECK(kolmogorov_q(0.5) == doctest::Approx(0.9639452436648059).epsilon(1e-9));
  CHECK(kolmogorov_q(1.0) == doctest::Approx(0.2699996716773238).epsilon(1e-9));
  CHECK(kolmogorov_q(0.0) == 1.0);
  CHECK(kolmogorov_q(3.0) < 1e-7);
}

TEST_CASE("KS test accepts the true law and rejects a wrong shape") {
  RandomStream rng(11);
  const std::size_t n = 100000;
  std::vector<double> draws(n);
  for (auto& d : draws) d = rng.gamma(3.0, 2.0);
  CHECK(ks_test_gamma_int(draws, 3, 2.0).p_value > 0.01);
  CHECK(ks_test_gamma_int(draws, 4, 2.0).p_value < 1e-6);
  CHECK(ks_test_gamma_int(draws, 3, 1.0).p_value < 1e-6);
}

TEST_CASE("Welford accumulator matches direct computation") {
  RandomStream rng(13);
  std::vector<double> xs(5000);
  for (auto& x : xs) x = rng.gamma(2.5);
  WelfordAccumulator acc;
  double mean = 0.0;
  for (const double x : xs) {
    acc.add(x);
    mean += x;
  }
  mean /= xs.size();
  double var = 0.0;
  for (const double x : xs) var += (x - mean) * (x - mean);
  var /= xs.size() - 1;
  CHECK(acc.mean() == doctest::Approx(mean).epsilon(1e-12));
  CHECK(acc.variance() == doctest::Approx(var).epsilon(1e-10));
  CHECK(acc.count() == xs.size());
}

TEST_CASE("binomial CI half-width") {
  CHECK(normal_ci_halfwidth(0.5, 10000) == doctest::Approx(1.96 * 0.005).epsilon(1e-12));
  CHECK(normal_ci_halfwidth(0.0, 1) == 0.0);
  CHECK(normal_ci_halfwidth(1.0, 1) == 0.0);
  CHECK(normal_ci_halfwidth(0.3, 0) == 0.0);
}

TEST_SUITE_END();
