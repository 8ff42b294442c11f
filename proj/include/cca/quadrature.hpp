#pragma once

#include <cstddef>
#include <functional>

namespace cca {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].
/// Bisects the interval with the largest error estimate until the total
/// estimate is below max(abs_tol, rel_tol * |value|); throws AccuracyError
/// after `max_intervals` subintervals.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-12,
                           double rel_tol = 1e-12, std::size_t max_intervals = 4000);

}  // namespace cca
