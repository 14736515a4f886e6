#include "hcncov/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "hcncov/stats.hpp"

namespace hcncov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Evaluation-only parameters; draws depend on (lambda_b, M, K) alone, so
// configs sharing those reuse one realization per trial.
struct EvalParams {
  double alpha;
  double power;
  double qt;  // p * delta_t^2
  double qr;  // p * delta_r^2
  double noise;
  bool correlated;

  explicit EvalParams(const NetworkConfig& c)
      : alpha(c.alpha),
        power(c.power),
        qt(c.power * c.delta_t * c.delta_t),
        qr(c.power * c.delta_r * c.delta_r),
        noise(c.noise_power),
        correlated(c.correlated_distortion) {}
  bool operator==(const EvalParams&) const = default;
};

struct Scratch {
  Realization real;
  std::vector<double> att;      // distance^-alpha per BS
  std::vector<double> contrib;  // interference contribution per BS
};

// r2^(-alpha/2) with fast paths for the common integer/half-integer exponents
inline double path_attenuation(double r2, double alpha) {
  if (alpha == 4.0) return 1.0 / (r2 * r2);
  if (alpha == 3.0) {
    const double r = std::sqrt(r2);
    return 1.0 / (r2 * r);
  }
  if (alpha == 2.0) return 1.0 / r2;
  return std::pow(r2, -0.5 * alpha);
}

double max_sir_over_candidates(const Realization& real, const EvalParams& p, Scratch& s) {
  const std::size_t n = real.size();
  if (n == 0) return 0.0;  // vacuous union: never covered
  s.att.resize(n);
  s.contrib.resize(n);
  double itot = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r2 =
        std::max(real.positions[j].x * real.positions[j].x +
                     real.positions[j].y * real.positions[j].y,
                 1e-300);
    s.att[j] = path_attenuation(r2, p.alpha);
    s.contrib[j] = p.power * real.interf_frac[j] * real.norm_sq[j] * s.att[j];
    itot += s.contrib[j];
  }
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double gt = p.correlated ? real.norm_sq[j] : real.dist_tx[j];
    const double gr = p.correlated ? real.norm_sq[j] : real.dist_rx[j];
    const double den =
        (p.qt * gt + p.qr * gr) * s.att[j] + (itot - s.contrib[j]) + p.noise;
    const double num = p.power * real.serve_frac[j] * real.norm_sq[j] * s.att[j];
    const double sir = den > 0.0 ? num / den : kInf;
    if (sir > best) best = sir;
  }
  return best;
}

}  // namespace

void Window::validate() const {
  if (!(width_km > 0.0) || !(height_km > 0.0))
    throw std::invalid_argument("window dimensions must be positive");
}

void Realization::clear() {
  positions.clear();
  norm_sq.clear();
  serve_frac.clear();
  interf_frac.clear();
  dist_tx.clear();
  dist_rx.clear();
}

std::vector<Point> sample_ppp(double lambda_b, const Window& window, RandomStream& rng) {
  window.validate();
  if (!(lambda_b >= 0.0)) throw std::invalid_argument("lambda_b must be nonnegative");
  const std::uint64_t n = rng.poisson(lambda_b * window.area());
  std::vector<Point> pts(n);
  for (auto& pt : pts) {
    pt.x = rng.uniform(-0.5 * window.width_km, 0.5 * window.width_km);
    pt.y = rng.uniform(-0.5 * window.height_km, 0.5 * window.height_km);
  }
  return pts;
}

void sample_realization(const NetworkConfig& cfg, const Window& window,
                        RandomStream& rng, Realization& out) {
  out.clear();
  out.positions = sample_ppp(cfg.lambda_b, window, rng);
  const std::size_t n = out.positions.size();
  const int m = cfg.m_antennas;
  const int k = cfg.k_users;
  const double delta = static_cast<double>(m - k + 1);
  out.norm_sq.resize(n);
  out.serve_frac.resize(n);
  out.interf_frac.resize(n);
  out.dist_tx.resize(n);
  out.dist_rx.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.norm_sq[j] = rng.gamma(static_cast<double>(m));
    out.serve_frac[j] = rng.beta(delta, static_cast<double>(k - 1));
    out.interf_frac[j] = rng.beta(static_cast<double>(k), static_cast<double>(m - k));
    out.dist_tx[j] = rng.gamma(static_cast<double>(m));
    out.dist_rx[j] = rng.gamma(static_cast<double>(m));
  }
}

TrialResult evaluate_coverage(const Realization& real, const NetworkConfig& cfg) {
  cfg.validate();
  Scratch s;
  const double best = max_sir_over_candidates(real, EvalParams(cfg), s);
  return TrialResult{best > cfg.target_sir, best};
}

TrialResult trial_coverage(const NetworkConfig& cfg, const Window& window, RandomStream& rng) {
  cfg.validate();
  Realization real;
  sample_realization(cfg, window, rng, real);
  return evaluate_coverage(real, cfg);
}

CoverageEstimate estimate_coverage(const NetworkConfig& cfg, const Window& window,
                                   std::size_t trials, std::uint64_t seed, unsigned workers) {
  const NetworkConfig* one = &cfg;
  return estimate_coverage_multi(std::span<const NetworkConfig>(one, 1), window, trials, seed,
                                 workers)[0];
}

std::vector<CoverageEstimate> estimate_coverage_multi(std::span<const NetworkConfig> cfgs,
                                                      const Window& window, std::size_t trials,
                                                      std::uint64_t seed, unsigned workers) {
  if (cfgs.empty()) throw std::invalid_argument("no configs given");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  window.validate();
  for (const auto& c : cfgs) {
    c.validate();
    if (c.lambda_b != cfgs[0].lambda_b || c.m_antennas != cfgs[0].m_antennas ||
        c.k_users != cfgs[0].k_users)
      throw std::invalid_argument(
          "common-random-numbers estimation requires identical lambda_b, m_antennas, k_users");
  }

  // Configs sharing evaluation parameters differ only in target_sir and share
  // the per-trial max-SIR computation.
  struct Group {
    EvalParams params;
    std::vector<std::size_t> cfg_indices;
  };
  std::vector<Group> groups;
  for (std::size_t i = 0; i < cfgs.size(); ++i) {
    const EvalParams p(cfgs[i]);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return g.params == p; });
    if (it == groups.end())
      groups.push_back(Group{p, {i}});
    else
      it->cfg_indices.push_back(i);
  }

  const unsigned nworkers =
      std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(trials));
  std::vector<std::vector<std::uint64_t>> counts(
      nworkers, std::vector<std::uint64_t>(cfgs.size(), 0));
  std::atomic<std::size_t> next{0};
  constexpr std::size_t kChunk = 256;

  auto body = [&](unsigned w) {
    Scratch scratch;
    auto& local = counts[w];
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= trials) break;
      const std::size_t end = std::min(begin + kChunk, trials);
      for (std::size_t t = begin; t < end; ++t) {
        RandomStream rng = RandomStream::for_trial(seed, t);
        sample_realization(cfgs[0], window, rng, scratch.real);
        for (const auto& g : groups) {
          const double best = max_sir_over_candidates(scratch.real, g.params, scratch);
          for (const std::size_t ci : g.cfg_indices)
            if (best > cfgs[ci].target_sir) ++local[ci];
        }
      }
    }
  };

  if (nworkers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(body, w);
    for (auto& th : pool) th.join();
  }

  std::vector<CoverageEstimate> out(cfgs.size());
  for (std::size_t i = 0; i < cfgs.size(); ++i) {
    std::uint64_t covered = 0;
    for (unsigned w = 0; w < nworkers; ++w) covered += counts[w][i];
    const double p_hat = static_cast<double>(covered) / static_cast<double>(trials);
    out[i] = CoverageEstimate{p_hat, trials, normal_ci_halfwidth(p_hat, trials), seed};
  }
  return out;
}

std::vector<double> max_sir_samples(const NetworkConfig& cfg, const Window& window,
                                    std::size_t trials, std::uint64_t seed, unsigned workers) {
  cfg.validate();
  window.validate();
  std::vector<double> out(trials);
  const EvalParams params(cfg);
  const unsigned nworkers =
      std::min<unsigned>(resolve_workers(workers), std::max<std::size_t>(trials, 1));
  std::atomic<std::size_t> next{0};
  constexpr std::size_t kChunk = 256;
  auto body = [&]() {
    Scratch scratch;
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= trials) break;
      const std::size_t end = std::min(begin + kChunk, trials);
      for (std::size_t t = begin; t < end; ++t) {
        RandomStream rng = RandomStream::for_trial(seed, t);
        sample_realization(cfg, window, rng, scratch.real);
        out[t] = max_sir_over_candidates(scratch.real, params, scratch);
      }
    }
  };
  if (nworkers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  return out;
}

CoverageEstimate estimate_coverage_streaming(const NetworkConfig& cfg, const Window& window,
                                             std::size_t max_trials, std::uint64_t seed,
                                             double target_ci) {
  cfg.validate();
  window.validate();
  if (max_trials == 0) throw std::invalid_argument("max_trials must be >= 1");
  WelfordAccumulator acc;
  Scratch scratch;
  const EvalParams params(cfg);
  for (std::size_t t = 0; t < max_trials; ++t) {
    RandomStream rng = RandomStream::for_trial(seed, t);
    sample_realization(cfg, window, rng, scratch.real);
    const double best = max_sir_over_candidates(scratch.real, params, scratch);
    acc.add(best > cfg.target_sir ? 1.0 : 0.0);
    if (target_ci > 0.0 && (t + 1) % 1024 == 0 &&
        normal_ci_halfwidth(acc.mean(), acc.count()) < target_ci)
      break;
  }
  return CoverageEstimate{acc.mean(), acc.count(), normal_ci_halfwidth(acc.mean(), acc.count()),
                          seed};
}

}  // namespace hcncov
