#pragma once

#include <Eigen/Dense>
#include <utility>

#include "hcncov/config.hpp"
#include "hcncov/mc.hpp"
#include "hcncov/random.hpp"
#include "hcncov/stats.hpp"

namespace hcncov {

/// K x M channel matrix; row k holds user k's channel coefficients, i.i.d.
/// standard circularly-symmetric complex Gaussian.
Eigen::MatrixXcd sample_channel(int k_users, int m_antennas, RandomStream& rng);

/// Zero-forcing precoder: W = Hbar^H (Hbar Hbar^H)^-1 built from the
/// row-normalized channel, columns rescaled to unit norm. Hbar's row j is
/// hbar_j^H, so (Hbar W) is diagonal: hbar_j^H w_k = 0 for j != k.
/// Throws std::domain_error when Hbar is numerically rank-deficient
/// (condition number above 1e12).
Eigen::MatrixXcd zf_precoder(const Eigen::MatrixXcd& channel);

/// |hbar_k^H w_k|^2 * ||h_k||^2 — the serving-link fading power, distributed
/// Gamma(M-K+1, 1).
double desired_power(const Eigen::MatrixXcd& channel, const Eigen::MatrixXcd& precoder, int k);

/// ||g^H W||^2 for an interfering cell's precoder W. Distributed Gamma(K,1)
/// when W has orthonormal columns independent of g (see random_isometry);
/// for the strict ZF pseudo-inverse the law is a correlated-exponential sum
/// with the same mean but a larger variance.
double interference_power(const Eigen::VectorXcd& g, const Eigen::MatrixXcd& precoder_other);

/// (tx, rx) distortion powers of the serving link: p*delta^2*||h_k||^2 each.
std::pair<double, double> distortion_powers(const Eigen::MatrixXcd& channel,
                                            const NetworkConfig& cfg, int k);

/// Haar-distributed M x K isometry (orthonormal columns): the unit-power
/// precoder model under which the interference law is exactly Gamma(K,1).
Eigen::MatrixXcd random_isometry(int m_antennas, int k_users, RandomStream& rng);

/// max_{j != k} |hbar_j^H w_k| — test hook for the ZF property.
double zf_max_offdiagonal(const Eigen::MatrixXcd& channel, const Eigen::MatrixXcd& precoder);

struct KsSuiteResult {
  KsResult desired;       ///< vs Gamma(M-K+1, 1), strict-ZF serving link
  KsResult interference;  ///< vs Gamma(K, 1), isometry interferer precoder
  bool passed(double significance = 0.01) const {
    return desired.p_value > significance && interference.p_value > significance;
  }
};

/// Distributional cross-validation of the fading shortcuts at sample size n.
KsSuiteResult run_ks_suite(int m_antennas, int k_users, std::size_t n, std::uint64_t seed);

/// Coverage estimated from explicit channel matrices and precoders instead of
/// the distribution-level shortcuts. The serving link always uses strict ZF;
/// interfering precoders default to random isometries (the law assumed by the
/// closed-form analysis) with a flag to use strict ZF there as well, which
/// quantifies the Gamma(K,1) approximation for K >= 2. Distortion powers are
/// the physical p*delta^2*||h||^2 of the serving link.
CoverageEstimate estimate_coverage_channel_level(const NetworkConfig& cfg, const Window& window,
                                                 std::size_t trials, std::uint64_t seed,
                                                 unsigned workers = 0,
                                                 bool strict_zf_interferers = false);

}  // namespace hcncov
