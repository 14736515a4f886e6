#pragma once

#include <cstddef>
#include <vector>

#include "hcncov/config.hpp"

namespace hcncov {

/// C(alpha, K) = (2 pi lambda_B / alpha) * sum_{m=1..K} C(K,m) B(K-m+2/alpha, m-2/alpha).
/// The m = 0 term of the source expression is divergent and is excluded.
/// Transmit power is NOT folded in here; the bound evaluation multiplies by
/// p^(2/alpha) so that exp(-C_eff s^(2/alpha)) is the Laplace transform of the
/// actual other-cell interference at equal per-user powers.
struct InterferenceConstant {
  double value = 0.0;
  double alpha = 0.0;
  int k_users = 0;
  double lambda_b = 0.0;
};

/// Raw-parameter form; lambda_b = 0 is allowed (the constant is linear in it).
/// Throws std::domain_error for alpha <= 2.
double interference_constant(double lambda_b, double alpha, int k_users);
InterferenceConstant interference_constant(const NetworkConfig& cfg);

/// Effective constant used at evaluation argument s = T/p * l^alpha.
double effective_interference_constant(const NetworkConfig& cfg);

/// exp(-s^(2/alpha) * c); equals 1 at s = 0.
double laplace_interference(double s, double c, double alpha);

/// (1 + q s)^(-M). q is the distortion scale (p * delta^2 when evaluated at T/p).
double laplace_distortion(double s, double q, int m_antennas);

/// Derivative stack of a Laplace transform at one point: values[n] is the
/// n-th derivative. Complete monotonicity means (-1)^n values[n] >= 0.
struct LaplaceDeriv {
  double point = 0.0;
  std::vector<double> values;  // orders 0..n
};

/// Exact closed form: d^n/ds^n (1+qs)^-M = (-q)^n M(M+1)...(M+n-1) (1+qs)^-(M+n).
LaplaceDeriv distortion_deriv_stack(double s, double q, int m_antennas, int max_order);

/// Derivatives of exp(-c s^(2/alpha)) via the composite-function recurrence
///   F^(n)(s) = sum_{j=0..n-1} C(n-1,j) g^(n-j)(s) F^(j)(s),  g(s) = -c s^(2/alpha).
/// Throws std::domain_error at s = 0 with max_order >= 1 (the fractional powers
/// are singular there).
LaplaceDeriv interference_deriv_stack(double s, double c, double alpha, int max_order);

/// Integrand of the coverage bound at serving distance l (before the 2*pi*lambda_B*l
/// polar weight): the triple binomial sum over Laplace-transform derivatives,
/// with the distortion transforms evaluated at T/p and the interference
/// transform at s = (T/p) l^alpha.
double coverage_integrand(double l, const NetworkConfig& cfg);

struct BoundResult {
  double value = 0.0;        ///< raw bound; may exceed 1 at low targets
  double clamped = 0.0;      ///< min(value, 1)
  std::size_t evaluations = 0;
  double error_estimate = 0.0;
};

/// Closed-form coverage upper bound: 2 pi lambda_B Int_0^inf integrand(l) l dl,
/// evaluated by adaptive Gauss-Kronrod quadrature in u = l^2 with relative
/// tolerance 1e-9 and tail extension until the truncated mass is < 1e-8 of the
/// accumulated integral. Throws std::domain_error for target_sir = 0 (the
/// bound diverges) and std::runtime_error if the evaluation budget is exhausted.
BoundResult coverage_bound(const NetworkConfig& cfg);

/// Ideal-hardware closed form for M = K (and SISO): alpha sin(2pi/alpha) /
/// (2 pi T^(2/alpha)). Exposed for tests and the CLI cross-check.
double ideal_delta1_coverage(double alpha, double target_sir);

}  // namespace hcncov
