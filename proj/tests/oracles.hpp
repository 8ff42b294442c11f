#pragma once

// Independent reference computations for the test suites. Nothing here calls
// the library's transforms or SIMD kernels: plain loops over nodes, and
// multiprecision arithmetic where digits matter.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "cca/grid_fn.hpp"

namespace oracle {

using HP = boost::multiprecision::cpp_bin_float_50;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// max over primal nodes of <y, x> - f(x), plain loop.
inline double conjugate_at(const cca::GridFn& f, const cca::Point& y) {
  double best = -kInf;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!std::isfinite(f[k])) continue;
    const cca::Point x = f.grid().node(k);
    double v = y[0] * x[0];
    if (f.dim() == 2) v += y[1] * x[1];
    best = std::max(best, v - f[k]);
  }
  return best;
}

/// 1-D inf-convolution at node index i: min over j of f[j] + g[i - j + off].
inline double infconv_1d(const cca::GridFn& f, const cca::GridFn& g, std::size_t i) {
  const long n = static_cast<long>(f.size());
  const long off = std::lround(-f.grid().axis(0).lo / f.grid().spacing(0));
  double best = kInf;
  for (long j = 0; j < n; ++j) {
    const long k = static_cast<long>(i) - j + off;
    if (k < 0 || k >= n) continue;
    best = std::min(best, f[static_cast<std::size_t>(j)] + g[static_cast<std::size_t>(k)]);
  }
  return best;
}

/// Moreau envelope at node i of a 1-D function, by a plain loop.
inline double envelope_1d(const cca::GridFn& f, double lambda, std::size_t i) {
  const double x = f.grid().node(i)[0];
  double best = kInf;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double y = f.grid().node(j)[0];
    best = std::min(best, f[j] + (x - y) * (x - y) / (2.0 * lambda));
  }
  return best;
}

/// pi by Machin's formula in 50-digit arithmetic.
inline HP pi_hp() {
  const auto arctan_inv = [](int m) {
    HP sum = 0;
    HP term = HP(1) / m;
    const HP m2 = HP(m) * m;
    for (int k = 0; k < 200; ++k) {
      sum += (k % 2 == 0 ? term : -term) / (2 * k + 1);
      term /= m2;
    }
    return sum;
  };
  return 16 * arctan_inv(5) - 4 * arctan_inv(239);
}

inline double sqrt_pi() { return static_cast<double>(sqrt(pi_hp())); }

/// Gamma in 50-digit arithmetic.
inline double gamma_hp(double x) { return static_cast<double>(boost::math::tgamma(HP(x))); }

/// Principal Lambert W by bisection in 50-digit arithmetic, y >= 0.
inline double lambert_w_hp(double y) {
  HP lo = 0;
  HP hi = std::max(1.0, std::log1p(y) + 1.0);
  const HP target = y;
  for (int it = 0; it < 200; ++it) {
    const HP mid = (lo + hi) / 2;
    if (mid * exp(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return static_cast<double>((lo + hi) / 2);
}

/// Random rational in [1/den, num_max/den] with small denominators.
inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 40);
  std::uniform_int_distribution<int> den(1, 12);
  return Rational(num(rng), den(rng));
}

}  // namespace oracle
