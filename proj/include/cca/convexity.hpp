#pragma once

#include <cstddef>
#include <optional>

#include "cca/grid_fn.hpp"

namespace cca {

inline constexpr double kConvexityTol = 1e-9;

struct ConvexityReport {
  bool convex = true;
  /// Smallest flat index at which a violation was found.
  std::optional<std::size_t> violation;
  /// Most negative second difference seen on finite triples (0 if none).
  double worst_second_difference = 0.0;
  /// True when some grid line had finite values split by +inf.
  bool domain_gap = false;
};

/// Discrete convexity test. A violation is either a second difference below
/// -tol * max(1, scale) on three consecutive finite samples of a grid line,
/// or a +inf node lying between two finite nodes of the same line. In 2-D the
/// lines run along both axes, both diagonals, and the four (1,2)-type
/// directions, which covers the midpoint inequality for those node pairs.
///
/// Throws DomainError when every value is +inf and ImproperError on -inf.
ConvexityReport discrete_convexity_check(const GridFn& f, double tol = kConvexityTol);

}  // namespace cca
