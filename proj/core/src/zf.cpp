#include "hcncov/zf.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace hcncov {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

std::complex<double> standard_cn(RandomStream& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return {normal(rng.engine()) * kInvSqrt2, normal(rng.engine()) * kInvSqrt2};
}

unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

Eigen::MatrixXcd sample_channel(int k_users, int m_antennas, RandomStream& rng) {
  if (k_users < 1 || m_antennas < k_users)
    throw std::invalid_argument("need 1 <= K <= M for a channel matrix");
  Eigen::MatrixXcd h(k_users, m_antennas);
  for (int r = 0; r < k_users; ++r)
    for (int c = 0; c < m_antennas; ++c) h(r, c) = standard_cn(rng);
  return h;
}

Eigen::MatrixXcd zf_precoder(const Eigen::MatrixXcd& channel) {
  const int k = static_cast<int>(channel.rows());
  const int m = static_cast<int>(channel.cols());
  if (k < 1 || m < k) throw std::invalid_argument("channel must be K x M with K <= M");
  // Hbar row j = hbar_j^H
  Eigen::MatrixXcd hbar(k, m);
  for (int r = 0; r < k; ++r) {
    const double nrm = channel.row(r).norm();
    if (!(nrm > 0.0)) throw std::domain_error("zero channel row");
    hbar.row(r) = channel.row(r).conjugate() / nrm;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(hbar,
                                         Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (!(sv(k - 1) > sv(0) * 1e-12))
    throw std::domain_error("channel matrix is numerically rank-deficient");
  // Minimum-norm solution of Hbar W = I is the pseudo-inverse Hbar^H (Hbar Hbar^H)^-1.
  Eigen::MatrixXcd w = svd.solve(Eigen::MatrixXcd::Identity(k, k));
  for (int c = 0; c < k; ++c) w.col(c).normalize();
  return w;
}

double desired_power(const Eigen::MatrixXcd& channel, const Eigen::MatrixXcd& precoder, int k) {
  if (k < 0 || k >= channel.rows()) throw std::out_of_range("user index");
  const double nrm = channel.row(k).norm();
  const std::complex<double> ip =
      (channel.row(k).conjugate() / nrm) * precoder.col(k);
  return std::norm(ip) * nrm * nrm;
}

double interference_power(const Eigen::VectorXcd& g, const Eigen::MatrixXcd& precoder_other) {
  if (g.size() != precoder_other.rows())
    throw std::invalid_argument("channel/precoder dimension mismatch");
  return (g.adjoint() * precoder_other).squaredNorm();
}

std::pair<double, double> distortion_powers(const Eigen::MatrixXcd& channel,
                                            const NetworkConfig& cfg, int k) {
  if (k < 0 || k >= channel.rows()) throw std::out_of_range("user index");
  const double norm_sq = channel.row(k).squaredNorm();
  return {cfg.power * cfg.delta_t * cfg.delta_t * norm_sq,
          cfg.power * cfg.delta_r * cfg.delta_r * norm_sq};
}

Eigen::MatrixXcd random_isometry(int m_antennas, int k_users, RandomStream& rng) {
  if (k_users < 1 || m_antennas < k_users)
    throw std::invalid_argument("need 1 <= K <= M for an isometry");
  Eigen::MatrixXcd a(m_antennas, k_users);
  for (int r = 0; r < m_antennas; ++r)
    for (int c = 0; c < k_users; ++c) a(r, c) = standard_cn(rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(m_antennas, k_users);
  // fix the phase ambiguity so the distribution is exactly Haar
  const auto& r = qr.matrixQR();
  for (int c = 0; c < k_users; ++c) {
    const std::complex<double> d = r(c, c);
    if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

double zf_max_offdiagonal(const Eigen::MatrixXcd& channel, const Eigen::MatrixXcd& precoder) {
  const int k = static_cast<int>(channel.rows());
  double worst = 0.0;
  for (int j = 0; j < k; ++j) {
    const Eigen::RowVectorXcd hbar = channel.row(j).conjugate() / channel.row(j).norm();
    for (int c = 0; c < k; ++c) {
      if (c == j) continue;
      worst = std::max(worst, std::abs((hbar * precoder.col(c))(0, 0)));
    }
  }
  return worst;
}

KsSuiteResult run_ks_suite(int m_antennas, int k_users, std::size_t n, std::uint64_t seed) {
  std::vector<double> desired(n);
  std::vector<double> interf(n);
  const unsigned nworkers = resolve_workers(0);
  std::atomic<std::size_t> next{0};
  constexpr std::size_t kChunk = 512;
  auto body = [&]() {
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= n) break;
      const std::size_t end = std::min(begin + kChunk, n);
      for (std::size_t i = begin; i < end; ++i) {
        RandomStream rng = RandomStream::for_trial(seed, i);
        const Eigen::MatrixXcd h = sample_channel(k_users, m_antennas, rng);
        const Eigen::MatrixXcd w = zf_precoder(h);
        desired[i] = desired_power(h, w, 0);
        const Eigen::MatrixXcd w_other = random_isometry(m_antennas, k_users, rng);
        Eigen::VectorXcd g(m_antennas);
        for (int c = 0; c < m_antennas; ++c) g(c) = standard_cn(rng);
        interf[i] = interference_power(g, w_other);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w + 1 < nworkers; ++w) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();

  KsSuiteResult out;
  out.desired = ks_test_gamma_int(std::move(desired), m_antennas - k_users + 1);
  out.interference = ks_test_gamma_int(std::move(interf), k_users);
  return out;
}

CoverageEstimate estimate_coverage_channel_level(const NetworkConfig& cfg, const Window& window,
                                                 std::size_t trials, std::uint64_t seed,
                                                 unsigned workers, bool strict_zf_interferers) {
  cfg.validate();
  window.validate();
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const int m = cfg.m_antennas;
  const int k = cfg.k_users;
  const double qt = cfg.delta_t * cfg.delta_t;
  const double qr = cfg.delta_r * cfg.delta_r;
  const unsigned nworkers =
      std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(trials));
  std::vector<std::uint64_t> counts(nworkers, 0);
  std::atomic<std::size_t> next{0};
  constexpr std::size_t kChunk = 16;

  auto body = [&](unsigned widx) {
    std::vector<double> att, contrib, h_eff, norm_sq;
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= trials) break;
      const std::size_t end = std::min(begin + kChunk, trials);
      for (std::size_t t = begin; t < end; ++t) {
        RandomStream rng = RandomStream::for_trial(seed, t);
        const auto pts = sample_ppp(cfg.lambda_b, window, rng);
        const std::size_t n = pts.size();
        att.resize(n);
        contrib.resize(n);
        h_eff.resize(n);
        norm_sq.resize(n);
        double itot = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double r2 = std::max(pts[j].x * pts[j].x + pts[j].y * pts[j].y, 1e-300);
          att[j] = std::pow(r2, -0.5 * cfg.alpha);
          // channel from BS j to the typical user
          Eigen::VectorXcd c(m);
          for (int i = 0; i < m; ++i) c(i) = standard_cn(rng);
          norm_sq[j] = c.squaredNorm();
          // serving role: own-cell ZF with the typical user as user 0
          if (k == 1) {
            h_eff[j] = norm_sq[j];  // matched filter
          } else {
            Eigen::MatrixXcd own(k, m);
            own.row(0) = c.transpose();
            for (int r = 1; r < k; ++r)
              for (int i = 0; i < m; ++i) own(r, i) = standard_cn(rng);
            h_eff[j] = desired_power(own, zf_precoder(own), 0);
          }
          // interfering role: the cell serves its own K users
          Eigen::MatrixXcd w_other;
          if (strict_zf_interferers) {
            w_other = zf_precoder(sample_channel(k, m, rng));
          } else {
            w_other = random_isometry(m, k, rng);
          }
          contrib[j] = cfg.power * interference_power(c, w_other) * att[j];
          itot += contrib[j];
        }
        double best = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double dist = cfg.power * (qt + qr) * norm_sq[j];
          const double den = dist * att[j] + (itot - contrib[j]) + cfg.noise_power;
          const double num = cfg.power * h_eff[j] * att[j];
          const double sir = den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
          best = std::max(best, sir);
        }
        if (best > cfg.target_sir) ++counts[widx];
      }
    }
  };

  if (nworkers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(body, w);
    for (auto& th : pool) th.join();
  }
  std::uint64_t covered = 0;
  for (const auto c : counts) covered += c;
  const double p_hat = static_cast<double>(covered) / static_cast<double>(trials);
  return CoverageEstimate{p_hat, trials, normal_ci_halfwidth(p_hat, trials), seed};
}

}  // namespace hcncov
