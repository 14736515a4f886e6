#include "hcncov/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hcncov {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  if (n <= 60) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  }
  // log-space for large orders
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

double beta_function(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

}  // namespace

double interference_constant(double lambda_b, double alpha, int k_users) {
  if (!(alpha > 2.0)) throw std::domain_error("interference constant requires alpha > 2");
  if (k_users < 1) throw std::domain_error("interference constant requires K >= 1");
  if (!(lambda_b >= 0.0)) throw std::domain_error("lambda_b must be nonnegative");
  const double b = 2.0 / alpha;
  double sum = 0.0;
  for (int m = 1; m <= k_users; ++m)
    sum += binom(k_users, m) * beta_function(k_users - m + b, m - b);
  return 2.0 * kPi * lambda_b / alpha * sum;
}

InterferenceConstant interference_constant(const NetworkConfig& cfg) {
  cfg.validate();
  return InterferenceConstant{interference_constant(cfg.lambda_b, cfg.alpha, cfg.k_users),
                              cfg.alpha, cfg.k_users, cfg.lambda_b};
}

double effective_interference_constant(const NetworkConfig& cfg) {
  return std::pow(cfg.power, 2.0 / cfg.alpha) *
         interference_constant(cfg.lambda_b, cfg.alpha, cfg.k_users);
}

double laplace_interference(double s, double c, double alpha) {
  if (!(s >= 0.0)) throw std::domain_error("laplace_interference requires s >= 0");
  if (s == 0.0) return 1.0;
  return std::exp(-std::pow(s, 2.0 / alpha) * c);
}

double laplace_distortion(double s, double q, int m_antennas) {
  if (!(s >= 0.0) || !(q >= 0.0)) throw std::domain_error("laplace_distortion requires s, q >= 0");
  if (m_antennas < 1) throw std::domain_error("laplace_distortion requires M >= 1");
  return std::pow(1.0 + q * s, -static_cast<double>(m_antennas));
}

LaplaceDeriv distortion_deriv_stack(double s, double q, int m_antennas, int max_order) {
  if (max_order < 0) throw std::domain_error("max_order must be >= 0");
  LaplaceDeriv out;
  out.point = s;
  out.values.resize(max_order + 1);
  const double base = 1.0 + q * s;
  double coeff = std::pow(base, -static_cast<double>(m_antennas));
  out.values[0] = coeff;
  for (int n = 1; n <= max_order; ++n) {
    coeff *= -q * (m_antennas + n - 1) / base;
    out.values[n] = coeff;
  }
  return out;
}

LaplaceDeriv interference_deriv_stack(double s, double c, double alpha, int max_order) {
  if (max_order < 0) throw std::domain_error("max_order must be >= 0");
  if (s == 0.0 && max_order >= 1)
    throw std::domain_error("interference transform derivatives are singular at s = 0");
  LaplaceDeriv out;
  out.point = s;
  out.values.resize(max_order + 1);
  const double beta = 2.0 / alpha;
  out.values[0] = laplace_interference(s, c, alpha);
  if (max_order == 0) return out;
  // g(s) = -c s^beta; g^(k) = -c beta(beta-1)...(beta-k+1) s^(beta-k)
  std::vector<double> gd(max_order + 1, 0.0);
  double fall = 1.0;
  for (int k = 1; k <= max_order; ++k) {
    fall *= beta - (k - 1);
    gd[k] = -c * fall * std::pow(s, beta - k);
  }
  for (int n = 1; n <= max_order; ++n) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += binom(n - 1, j) * gd[n - j] * out.values[j];
    out.values[n] = acc;
  }
  return out;
}

namespace detail {

// Normalized Poisson-weighted terms, each in [0,1]:
//   pd[a] = (-1)^a Ttilde^a (Lr*Lt)^(a) (Ttilde) / a!
//   pi[b] = (-1)^b s^b Li^(b)(s) / b!
// The bound integrand is sum_{a+b <= Delta-1} pd[a] pi[b]; working with these
// instead of the raw derivative stacks avoids factorial overflow at large
// Delta and keeps every partial sum nonnegative.
class BoundEvaluator {
 public:
  explicit BoundEvaluator(const NetworkConfig& cfg)
      : delta_(cfg.m_antennas - cfg.k_users + 1),
        beta_(2.0 / cfg.alpha),
        t_tilde_(cfg.target_sir / cfg.power),
        c_eff_(effective_interference_constant(cfg)) {
    const double yt = cfg.power * cfg.delta_t * cfg.delta_t * t_tilde_;  // = delta_t^2 * T
    const double yr = cfg.power * cfg.delta_r * cfg.delta_r * t_tilde_;
    const auto mt = nb_masses(yt, cfg.m_antennas, delta_);
    const auto mr = nb_masses(yr, cfg.m_antennas, delta_);
    pd_.assign(delta_, 0.0);
    for (int a = 0; a < delta_; ++a)
      for (int j = 0; j <= a; ++j) pd_[a] += mr[j] * mt[a - j];
    // |binom(beta, k)|; all positive for beta in (0,1)
    bcoef_.assign(delta_, 0.0);
    if (delta_ > 1) {
      bcoef_[1] = beta_;
      for (int k = 2; k < delta_; ++k) bcoef_[k] = bcoef_[k - 1] * (k - 1 - beta_) / k;
    }
    pi_.assign(delta_, 0.0);
  }

  int delta() const { return delta_; }
  double t_tilde() const { return t_tilde_; }
  double decay_rate_u() const { return c_eff_ * std::pow(t_tilde_, beta_); }

  // Integrand as a function of u = l^2.
  double at_u(double u) const {
    const double z = decay_rate_u() * u;  // c_eff * s^beta with s = t_tilde * l^alpha
    return sum_terms(z);
  }
  double at_l(double l) const { return at_u(l * l); }

 private:
  // P(N = n), n < count, for N ~ NB(M, y/(1+y)): the normalized
  // distortion-derivative terms (-1)^n Ttilde^n L^(n)(Ttilde)/n!.
  static std::vector<double> nb_masses(double y, int m, int count) {
    std::vector<double> out(count, 0.0);
    out[0] = std::pow(1.0 + y, -static_cast<double>(m));
    const double r = y / (1.0 + y);
    for (int n = 1; n < count; ++n) out[n] = out[n - 1] * r * (m + n - 1) / n;
    return out;
  }

  double sum_terms(double z) const {
    // pi[n] = (-1)^n s^n Li^(n)(s)/n! via
    //   pi[n] = (1/n) sum_j (n-j) gamma_{n-j} pi[j],  gamma_k = z |binom(beta,k)|;
    // every term is nonnegative, so no cancellation at any Delta.
    const int top = delta_ - 1;
    pi_[0] = std::exp(-z);
    for (int n = 1; n <= top; ++n) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += (n - j) * bcoef_[n - j] * pi_[j];
      pi_[n] = z * acc / n;
    }
    double total = 0.0;
    for (int a = 0; a <= top; ++a) {
      if (pd_[a] == 0.0) continue;
      double inner = 0.0;
      for (int b = 0; b + a <= top; ++b) inner += pi_[b];
      total += pd_[a] * inner;
    }
    return total;
  }

  int delta_;
  double beta_;
  double t_tilde_;
  double c_eff_;
  std::vector<double> pd_;
  std::vector<double> bcoef_;
  mutable std::vector<double> pi_;  // scratch; evaluator is single-threaded
};

// Gauss-Kronrod 7-15 pair on [a,b]; returns the K15 value, err gets the
// G7/K15 discrepancy estimate.
template <class F>
double quad_gk15(const F& f, double a, double b, double& err, std::size_t& evals) {
  static const double xgk[8] = {
      0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
      0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
  static const double wgk[8] = {
      0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
      0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
  static const double wg[4] = {
      0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k15 = wgk[7] * fc;
  double g7 = wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * xgk[i];
    const double fsum = f(c - dx) + f(c + dx);
    k15 += wgk[i] * fsum;
    if (i % 2 == 1) g7 += wg[i / 2] * fsum;
  }
  evals += 15;
  err = std::abs(k15 - g7) * h;
  return k15 * h;
}

// Left-to-right adaptive refinement; deterministic accumulation order.
template <class F>
double quad_adaptive(const F& f, double a, double b, double rel_tol, double abs_floor,
                     std::size_t& evals, double& err_out, std::size_t max_evals) {
  struct Seg {
    double a, b;
  };
  std::vector<Seg> stack{{a, b}};
  double total = 0.0;
  double err_total = 0.0;
  while (!stack.empty()) {
    const Seg s = stack.back();
    stack.pop_back();
    double err = 0.0;
    const double v = quad_gk15(f, s.a, s.b, err, evals);
    if (err <= std::max(rel_tol * std::abs(v), abs_floor) || (s.b - s.a) < 1e-14 * (b - a)) {
      total += v;
      err_total += err;
      continue;
    }
    if (evals > max_evals)
      throw std::runtime_error("coverage bound quadrature exceeded its evaluation budget");
    const double mid = 0.5 * (s.a + s.b);
    // push right first so the left half is refined (and accumulated) first
    stack.push_back({mid, s.b});
    stack.push_back({s.a, mid});
  }
  err_out += err_total;
  return total;
}

}  // namespace detail

double coverage_integrand(double l, const NetworkConfig& cfg) {
  cfg.validate();
  if (!(l > 0.0)) throw std::domain_error("coverage integrand requires l > 0");
  // Literal triple binomial sum over the Laplace-transform derivative stacks;
  // coverage_bound uses the normalized evaluator, and the two paths are
  // checked against each other in the tests.
  const int delta = cfg.m_antennas - cfg.k_users + 1;
  const double t_tilde = cfg.target_sir / cfg.power;
  const double qt = cfg.power * cfg.delta_t * cfg.delta_t;
  const double qr = cfg.power * cfg.delta_r * cfg.delta_r;
  const double c_eff = effective_interference_constant(cfg);
  const double s = t_tilde * std::pow(l, cfg.alpha);
  const auto dr = distortion_deriv_stack(t_tilde, qr, cfg.m_antennas, delta - 1);
  const auto dt = distortion_deriv_stack(t_tilde, qt, cfg.m_antennas, delta - 1);
  const auto di = interference_deriv_stack(s, c_eff, cfg.alpha, delta - 1);
  double total = 0.0;
  double inv_fact = 1.0;  // 1/i!
  for (int i = 0; i < delta; ++i) {
    if (i > 0) inv_fact /= i;
    const double sign_i = (i % 2 == 0) ? 1.0 : -1.0;
    for (int k = 0; k <= i; ++k) {
      double inner = 0.0;
      for (int n = 0; n <= i - k; ++n)
        inner += binom(i - k, n) * dr.values[n] * dt.values[i - k - n];
      total += sign_i * inv_fact * binom(i, k) * std::pow(t_tilde, i - k) * std::pow(s, k) *
               inner * di.values[k];
    }
  }
  return total;
}

BoundResult coverage_bound(const NetworkConfig& cfg) {
  cfg.validate();
  if (!(cfg.target_sir > 0.0))
    throw std::domain_error("coverage bound requires target_sir > 0 (it diverges at 0)");
  const detail::BoundEvaluator ev(cfg);
  const auto f = [&ev](double u) { return ev.at_u(u); };

  // 2 pi lambda Int f(l) l dl = pi lambda Int f(u) du with u = l^2. The
  // integrand decays like exp(-decay_rate_u * u) times a polynomial.
  const double rate = ev.decay_rate_u();
  if (!(rate > 0.0)) throw std::runtime_error("degenerate interference decay rate");
  const double eps_u = 1e-18;  // l = 1e-9 km endpoint guard
  const double seg = (4.0 + 2.0 * ev.delta()) / rate;

  BoundResult out;
  std::size_t evals = 0;
  double err = 0.0;
  double integral = 0.0;
  double lo = eps_u;
  double hi = seg;
  int quiet = 0;
  const std::size_t max_evals = 2'000'000;
  for (int piece = 0; piece < 64; ++piece) {
    const double v =
        detail::quad_adaptive(f, lo, hi, 1e-9, 1e-300, evals, err, max_evals);
    integral += v;
    // stop once two consecutive pieces add < 1e-10 of the accumulated mass
    if (std::abs(v) < 1e-10 * std::abs(integral)) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
    lo = hi;
    hi *= 2.0;
    if (evals > max_evals)
      throw std::runtime_error("coverage bound quadrature exceeded its evaluation budget");
  }
  out.value = kPi * cfg.lambda_b * integral;
  out.clamped = std::min(out.value, 1.0);
  out.evaluations = evals;
  out.error_estimate = kPi * cfg.lambda_b * err;
  return out;
}

double ideal_delta1_coverage(double alpha, double target_sir) {
  if (!(alpha > 2.0) || !(target_sir > 0.0))
    throw std::domain_error("ideal coverage requires alpha > 2 and T > 0");
  return alpha * std::sin(2.0 * kPi / alpha) / (2.0 * kPi * std::pow(target_sir, 2.0 / alpha));
}

}  // namespace hcncov
