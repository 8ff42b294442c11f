#pragma once

#include <cstddef>
#include <vector>

#include "cca/convexity.hpp"
#include "cca/grid.hpp"
#include "cca/grid_fn.hpp"

namespace cca {

struct ProxResult {
  Point query{};
  /// prox_{lambda f}(query), refined between grid nodes.
  Point point{};
  /// e_lambda f(query): the discrete minimum, lowered by the quadratic model
  /// of the refinement step.
  double envelope = 0.0;
  double lambda = 1.0;
  /// Fenchel-Young gap of (point, (query - point) / lambda) for the
  /// interpolated f; small means the slope is an approximate subgradient.
  double certificate_eps = 0.0;
  /// Grid node of the discrete minimizer.
  std::size_t node = 0;
  /// The discrete minimizer sits on the grid boundary.
  bool on_grid_boundary = false;
};

/// Proximal map of a fixed sampled convex function. Convexity is checked once
/// at construction (NonConvexError otherwise).
class ProxOperator {
 public:
  ProxOperator(GridFn f, double lambda, double convexity_tol = kConvexityTol);

  /// Discrete argmin of f(y) + |x - y|^2 / (2 lambda) (smallest index on ties),
  /// then a parabolic step per axis through the neighbouring samples (skipped
  /// at detected kinks of f),
  /// clipped to the bracket.
  /// Throws DomainError when x lies outside the grid box.
  [[nodiscard]] ProxResult operator()(const Point& x) const;

  [[nodiscard]] const GridFn& function() const { return f_; }
  [[nodiscard]] double lambda() const { return lambda_; }

 private:

  GridFn f_;
  double lambda_;
  std::vector<double> nodes0_;
  std::vector<double> nodes1_;
};

/// One-shot prox (validates convexity on every call).
ProxResult prox(const GridFn& f, double lambda, const Point& x);

/// e_lambda f at every node: min over nodes y of f(y) + |x - y|^2 / (2 lambda).
GridFn moreau_envelope(const GridFn& f, double lambda);

/// |x - prox_f(x) - prox_{f*}(x)| with lambda = 1, f* sampled on `dual_grid`.
/// Throws GridTooSmallError when prox_{f*}(x) lands on the dual grid boundary.
double moreau_decomposition_residual(const GridFn& f, const Point& x, const Grid& dual_grid);

/// Axis-aligned box [lo, hi] in R^dim.
struct Box {
  std::size_t dim = 1;
  Point lo{};
  Point hi{};
};

/// Nearest point of a nonempty box (componentwise clamp). DomainError if empty.
Point project(const Box& box, const Point& x);

/// max over grid nodes of |(|.| □ indicator([a, b]))(x) - d_[a,b](x)|.
double distance_via_infconv_check(double a, double b, const Grid& grid);

}  // namespace cca
