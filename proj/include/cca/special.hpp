#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <span>
#include <vector>

#include "cca/error.hpp"

namespace cca {

/// log Gamma(x) for x > 0 (Lanczos, g = 7, nine terms; reflection below 1/2).
double log_gamma(double x);
/// Gamma(x) for x > 0.
double gamma(double x);

/// n! n^x / (x (x + 1) ... (x + n)), evaluated in log space.
/// Throws DomainError for x <= 0 and ParameterError for n < 1.
double gamma_limit(double x, std::uint64_t n);

/// Volume of the unit l_p ball in R^n: 2^n Gamma(1 + 1/p)^n / Gamma(1 + n/p).
/// p may be +inf (volume 2^n). Throws DomainError for p < 1.
double ball_volume(int n, double p);
/// The same closed form for real alpha > 0.
double ball_volume(double alpha, double p);

struct LogConcavityResult {
  /// V(p)^lambda V(q)^(1 - lambda).
  double lhs = 0.0;
  /// V(1 / (lambda / p + (1 - lambda) / q)).
  double rhs = 0.0;
  /// lhs < rhs.
  bool holds = false;
  /// p == q, where equality is expected.
  bool degenerate = false;
};

/// Harmonic-arithmetic log-concavity of alpha -> V_alpha(p) in p.
LogConcavityResult log_concavity_check(double alpha, double p, double q, double lambda);

/// Beta(x, y) as the integral of t^(x-1) (1-t)^(y-1) over [0, 1], computed by
/// quadrature after removing the endpoint singularities.
double beta_integral(double x, double y);

namespace detail {

template <class T>
void check_coupon_input(std::span<const T> x, std::size_t max_n) {
  if (x.empty()) throw ParameterError("coupon: N must be at least 1");
  if (x.size() > max_n) throw SizeError("coupon: N = " + std::to_string(x.size()) + " exceeds " + std::to_string(max_n));
  for (const T& v : x)
    if (!(v > T(0))) throw DomainError("coupon: every x_i must be positive");
}

}  // namespace detail

/// p_N as the sum over all N! orderings sigma of
/// prod_i x_s(i) / S_i * sum_i 1 / S_i, with S_i = x_s(i) + ... + x_s(N).
/// Exact when T is a rational type. Throws SizeError for N > 8.
template <class T>
T coupon_pn_perm(std::span<const T> x) {
  detail::check_coupon_input(x, 8);
  const std::size_t n = x.size();
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  std::vector<T> tail(n);
  T total(0);
  do {
    T s(0);
    for (std::size_t i = n; i-- > 0;) {
      s += x[sigma[i]];
      tail[i] = s;
    }
    T prod(1);
    T recip(0);
    for (std::size_t i = 0; i < n; ++i) {
      prod *= x[sigma[i]] / tail[i];
      recip += T(1) / tail[i];
    }
    total += prod * recip;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

/// p_N by inclusion-exclusion over nonempty subsets S:
/// sum of (-1)^(|S|+1) / sum_{i in S} x_i. Throws SizeError for N > 24.
template <class T>
T coupon_pn_ie(std::span<const T> x) {
  detail::check_coupon_input(x, 24);
  const std::size_t n = x.size();
  const std::uint32_t subsets = std::uint32_t{1} << n;
  // Subset sums built incrementally from the subset without its lowest bit.
  std::vector<T> sums(subsets);
  sums[0] = T(0);
  T total(0);
  for (std::uint32_t s = 1; s < subsets; ++s) {
    const std::uint32_t low = s & (~s + 1);
    sums[s] = sums[s ^ low] + x[static_cast<std::size_t>(std::countr_zero(low))];
    const T term = T(1) / sums[s];
    if (std::popcount(s) % 2 == 1) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

/// p_N as the integral over s in (0, inf) of 1 - prod_i (1 - e^(-s x_i)),
/// the t = e^(-s) form of the integral over (0, 1) with weight dt / t. The tail
/// beyond s = 50 / min x_i is dropped. Throws SizeError for N > 24 and
/// AccuracyError if the quadrature does not converge.
double coupon_pn_integral(std::span<const double> x);

struct CouponProbeReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  /// Smallest Hessian eigenvalue of p_N found.
  double min_eigenvalue = 0.0;
  std::vector<double> min_point;
  /// Largest Hessian eigenvalue of 1 / p_N found.
  double max_inverse_eigenvalue = 0.0;
  std::vector<double> max_inverse_point;
  /// Smallest Hessian eigenvalue of log p_N found (log-convexity probe).
  double min_log_eigenvalue = 0.0;
};

/// Central-difference Hessians (step 1e-4 (1 + |x_i|)) of p_N, 1 / p_N and
/// log p_N at `trials` points drawn log-uniformly from [0.1, 10]^N.
/// Throws ParameterError unless 2 <= N <= 10.
CouponProbeReport coupon_convexity_probe(std::size_t n, std::size_t trials, std::uint64_t seed);

}  // namespace cca
