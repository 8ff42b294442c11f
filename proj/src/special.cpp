#include "cca/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "cca/quadrature.hpp"

namespace cca {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Neumaier compensated summation.
struct Sum {
  double s = 0.0;
  double c = 0.0;
  void add(double v) {
    const double t = s + v;
    c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  [[nodiscard]] double value() const { return s + c; }
};

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: x must be positive");
  if (x < 0.5) return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  const double z = x - 1.0;
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double gamma(double x) { return std::exp(log_gamma(x)); }

double gamma_limit(double x, std::uint64_t n) {
  if (!(x > 0.0)) throw DomainError("gamma_limit: x must be positive");
  if (n < 1) throw ParameterError("gamma_limit: n must be at least 1");
  // log(n! n^x / (x (x+1) ... (x+n))) = x log n - log x - sum_k log(1 + x/k).
  Sum s;
  s.add(x * std::log(static_cast<double>(n)));
  s.add(-std::log(x));
  for (std::uint64_t k = 1; k <= n; ++k) s.add(-std::log1p(x / static_cast<double>(k)));
  return std::exp(s.value());
}

double ball_volume(double alpha, double p) {
  if (!(alpha > 0.0)) throw ParameterError("ball_volume: dimension must be positive");
  if (!(p >= 1.0)) throw DomainError("ball_volume: p must be >= 1");
  if (std::isinf(p)) return std::exp2(alpha);
  return std::exp(alpha * (std::numbers::ln2 + log_gamma(1.0 + 1.0 / p)) - log_gamma(1.0 + alpha / p));
}

double ball_volume(int n, double p) {
  if (n < 1) throw ParameterError("ball_volume: n must be at least 1");
  if (std::isinf(p) && p > 0.0) return std::ldexp(1.0, n);
  return ball_volume(static_cast<double>(n), p);
}

LogConcavityResult log_concavity_check(double alpha, double p, double q, double lambda) {
  if (!(alpha > 1.0)) throw DomainError("log_concavity_check: alpha must exceed 1");
  if (!(p > 1.0) || !(q > 1.0)) throw DomainError("log_concavity_check: p and q must exceed 1");
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("log_concavity_check: lambda must lie in (0, 1)");
  LogConcavityResult r;
  r.lhs = std::pow(ball_volume(alpha, p), lambda) * std::pow(ball_volume(alpha, q), 1.0 - lambda);
  r.rhs = ball_volume(alpha, 1.0 / (lambda / p + (1.0 - lambda) / q));
  r.degenerate = p == q;
  r.holds = r.lhs < r.rhs;
  return r;
}

double beta_integral(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("beta_integral: x and y must be positive");
  // Split at 1/2; on [0, 1/2] put t = s^(1/x), so t^(x-1) dt = ds / x, and
  // symmetrically on [1/2, 1].
  const auto half = [](double a, double b) {
    const double upper = std::exp2(-a);
    const auto g = [a, b](double s) { return std::pow(-std::expm1(std::log(s) / a), b - 1.0); };
    return integrate(g, 0.0, upper, 1e-14, 1e-13).value / a;
  };
  return half(x, y) + half(y, x);
}

double coupon_pn_integral(std::span<const double> x) {
  detail::check_coupon_input(x, 24);
  const double xmin = *std::min_element(x.begin(), x.end());
  const auto integrand = [x](double s) {
    // 1 - prod(1 - e^(-s x_i)) without cancellation for small or large s.
    double log_prod = 0.0;
    for (double xi : x) log_prod += std::log1p(-std::exp(-s * xi));
    return -std::expm1(log_prod);
  };
  return integrate(integrand, 0.0, 50.0 / xmin, 1e-13, 1e-13).value;
}

namespace {

template <class F>
Eigen::MatrixXd hessian(const F& f, const std::vector<double>& x) {
  const std::size_t n = x.size();
  Eigen::MatrixXd hm(n, n);
  std::vector<double> y = x;
  const auto at = [&](std::size_t i, double di, std::size_t j, double dj) {
    y = x;
    y[i] += di;
    y[j] += dj;
    return f(y);
  };
  const double f0 = f(x);
  for (std::size_t i = 0; i < n; ++i) {
    const double hi = 1e-4 * (1.0 + std::abs(x[i]));
    hm(i, i) = (at(i, hi, i, 0.0) - 2.0 * f0 + at(i, -hi, i, 0.0)) / (hi * hi);
    for (std::size_t j = 0; j < i; ++j) {
      const double hj = 1e-4 * (1.0 + std::abs(x[j]));
      const double v = (at(i, hi, j, hj) - at(i, hi, j, -hj) - at(i, -hi, j, hj) + at(i, -hi, j, -hj)) / (4.0 * hi * hj);
      hm(i, j) = v;
      hm(j, i) = v;
    }
  }
  return hm;
}

std::pair<double, double> eigen_range(const Eigen::MatrixXd& m) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

}  // namespace

CouponProbeReport coupon_convexity_probe(std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (n < 2 || n > 10) throw ParameterError("coupon_convexity_probe: N must lie in [2, 10]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logu(std::log(0.1), std::log(10.0));
  const auto pn = [](const std::vector<double>& v) { return coupon_pn_ie<double>(v); };
  const auto inv = [&](const std::vector<double>& v) { return 1.0 / pn(v); };
  const auto lg = [&](const std::vector<double>& v) { return std::log(pn(v)); };

  CouponProbeReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  rep.max_inverse_eigenvalue = -std::numeric_limits<double>::infinity();
  rep.min_log_eigenvalue = std::numeric_limits<double>::infinity();
  std::vector<double> x(n);
  for (std::size_t t = 0; t < trials; ++t) {
    for (double& v : x) v = std::exp(logu(rng));
    const double lo = eigen_range(hessian(pn, x)).first;
    if (lo < rep.min_eigenvalue) {
      rep.min_eigenvalue = lo;
      rep.min_point = x;
    }
    const double hi = eigen_range(hessian(inv, x)).second;
    if (hi > rep.max_inverse_eigenvalue) {
      rep.max_inverse_eigenvalue = hi;
      rep.max_inverse_point = x;
    }
    rep.min_log_eigenvalue = std::min(rep.min_log_eigenvalue, eigen_range(hessian(lg, x)).first);
  }
  return rep;
}

}  // namespace cca
