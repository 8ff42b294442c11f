#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cca/ext_real.hpp"
#include "cca/grid.hpp"
#include "cca/grid_fn.hpp"

namespace cca {

/// Sampled conjugate f*(y) = max over primal nodes x of <y, x> - f(x).
struct ConjugateResult {
  GridFn dual;
  /// Per dual node, the flat primal index attaining the max (smallest index on ties).
  std::vector<std::size_t> argmax;
};

/// Linear-time discrete Legendre transform.
///
/// Each grid line is reduced to the lower convex hull of its finite samples,
/// and the sorted dual nodes are merged against the hull slopes in one pass.
/// Where a dual node lies within rounding distance of a hull slope, the
/// affected hull edges are rescanned point by point, so the result is
/// bit-identical to conjugate_oracle (values and argmax). 2-D inputs are
/// transformed along axis 1 and then along axis 0.
///
/// Throws ImproperError for improper f and DimensionError when the grid
/// dimensions differ.
ConjugateResult conjugate(const GridFn& f, const Grid& dual_grid);

/// Exhaustive O(n m) conjugate, the ground truth for conjugate().
ConjugateResult conjugate_oracle(const GridFn& f, const Grid& dual_grid);

/// Conjugate of the sampled function at one arbitrary slope, by exhaustive max.
double conjugate_at(const GridFn& f, const Point& y);

/// f** on f's own grid, via `dual_grid`.
GridFn biconjugate(const GridFn& f, const Grid& dual_grid);

struct InfConvResult {
  GridFn value;
  /// Per output node, the flat index of the minimizing y in inf_y f(y) + g(x - y).
  std::vector<std::size_t> argmin;
};

/// (f □ g)(x) = min over nodes y of f(y) + g(x - y), on the common grid.
///
/// Both functions must live on the same grid, and the origin must be a node
/// offset (lo / h integral per axis) so that x - y lands on nodes. Arguments
/// outside the grid count as +inf.
InfConvResult inf_convolution(const GridFn& f, const GridFn& g);

/// As inf_convolution, evaluated only at the listed output nodes; all other
/// nodes are +inf.
InfConvResult inf_convolution_at(const GridFn& f, const GridFn& g, std::span<const std::size_t> outputs);

/// max over dual nodes of |(f □ g)* - (f* + g*)|, over nodes where all three
/// conjugates are finite.
double infconv_dual_check(const GridFn& f, const GridFn& g, const Grid& dual_grid);

struct SubdifferentialSet {
  Point base{};
  /// Dual nodes y with f(x) + f*(y) - <y, x> <= epsilon, ascending flat order.
  std::vector<Point> slopes;
  std::vector<std::size_t> dual_nodes;
  double epsilon = 0.0;
};

/// 4 h times the larger of 1 and the steepest finite difference next to `node`.
double default_subdifferential_epsilon(const GridFn& f, std::size_t node);

/// Approximate subdifferential at a primal node through the Fenchel-Young gap.
/// Throws DomainError when f(node) is +inf.
SubdifferentialSet subdifferential(const GridFn& f, std::size_t node, const Grid& dual_grid,
                                   std::optional<double> epsilon = std::nullopt);

struct MaxFormulaResult {
  /// (f(x + h d) - f(x)) / h for the lattice step d.
  double difference_quotient = 0.0;
  /// max over the approximate subdifferential of <y, d>.
  double support_max = 0.0;
};

/// Compares the one-sided directional difference quotient with the support
/// function of the subdifferential along the lattice step `step` (e.g. {1, 0},
/// {-1, 0}, {1, 1}). The step is normalized to a unit direction.
/// Throws DomainError for boundary nodes or non-finite neighborhoods.
MaxFormulaResult max_formula_check(const GridFn& f, std::size_t node, std::array<long, 2> step, const Grid& dual_grid,
                                   std::optional<double> epsilon = std::nullopt);

struct LevelProbe {
  double level = 0.0;
  bool touches_boundary = false;
};

struct CoercivityReport {
  /// min over finite boundary nodes of (f(b) - min f) / |b - argmin|; 0 when the
  /// minimum sits on the boundary, +inf when no boundary node is finite.
  double growth_slope = 0.0;
  /// Smallest finite boundary value (+inf if none).
  double level_bound = 0.0;
  /// Some sublevel set above min f stays off the boundary.
  bool bounded_level_sets = false;
  bool coercive = false;
  std::vector<LevelProbe> scan;
};

/// Grid-level coercivity estimate. `levels` overrides the default scan of 16
/// levels between min f and min f + max(range of f, 1).
CoercivityReport coercivity_check(const GridFn& f, std::span<const double> levels = {});

/// Linear map R^cols -> R^rows, rows, cols in {1, 2}, row-major.
struct LinearMap {
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::array<double, 4> m{1.0, 0.0, 0.0, 1.0};

  static LinearMap identity(std::size_t d);
  [[nodiscard]] Point apply(const Point& x) const;
  [[nodiscard]] Point apply_transpose(const Point& y) const;
};

struct DualityGap {
  ExtReal primal;
  ExtReal dual;
  ExtReal gap;
  /// Some x in dom f was mapped outside g's grid box.
  bool truncation_warning = false;
};

/// p = min over f's nodes of f(x) + g(T x) (g interpolated, +inf outside its
/// box) and d = max over `dual_grid` of -f*(T^T y) - g*(-y) with exhaustive
/// nodal conjugates. Weak duality p >= d holds up to rounding.
DualityGap fenchel_duality_gap(const GridFn& f, const GridFn& g, const LinearMap& T, const Grid& dual_grid);

}  // namespace cca
