#pragma once

#include <cstddef>
#include <cstdint>

#include "cca/atom.hpp"
#include "cca/grid.hpp"
#include "cca/grid_fn.hpp"

namespace cca {

/// The pair (p_n, q_n) of the Asplund averaging iteration on R^2.
///
/// Both functions live on a grid symmetric about the origin. Every step
/// evaluates an inf-convolution at 2x, so the grid is cropped to half its
/// width (in nodes) after each step.
struct NormPair {
  GridFn p;
  GridFn q;
  int n = 0;
  /// Initial constant with q_0 <= p_0 <= (1 + C) q_0.
  double C = 0.0;
  /// The inputs were exchanged to get q_0 <= p_0.
  bool swapped = false;

  /// Half-width of the current grid along axis 0.
  [[nodiscard]] double region() const { return p.grid().axis(0).hi; }
};

/// Samples ||.||^2 / 2 for two norm atoms (`norm` or `norm_half_sq`) on a
/// symmetric grid and sets C = max over nonzero nodes of p_0 / q_0 - 1.
/// Throws ParameterError when neither order gives q_0 <= p_0.
NormPair init_pair(const FnAtom& norm1, const FnAtom& norm2, const Grid& grid);

/// Pair from arbitrary sampled convex, even, 2-homogeneous functions with a
/// user-supplied constant.
NormPair init_pair(GridFn p0, GridFn q0, double C);

/// max and min of p / q - 1 over nodes with q > 0.
struct RatioBounds {
  double max = 0.0;
  double min = 0.0;
};
RatioBounds ratio_bounds(const NormPair& pair);

/// 10 h for the pair's grid.
double default_sandwich_tol(const NormPair& pair);

/// p_{n+1} = (p_n + q_n) / 2 and q_{n+1}(x) = (p_n [] q_n)(2x) / 2, both on the
/// halved grid. Throws DivergenceError when q_{n+1} <= p_{n+1} <=
/// (1 + 4^-(n+1) C) q_{n+1} fails by more than `tol` at some node, and
/// ParameterError when the grid is too small to halve.
NormPair asplund_step(const NormPair& pair, double tol = -1.0);

struct StrictConvexityReport {
  /// Smallest normalized midpoint gap ((f(a) + f(b)) / 2 - f((a + b) / 2)) / |a - b|^2
  /// over pairs not collinear with the origin.
  double min_gap = kInf;
  /// The same over pairs on a common ray through the origin.
  double min_ray_gap = kInf;
  std::size_t pairs = 0;
  std::size_t ray_pairs = 0;
  Point worst_a{};
  Point worst_b{};
};

/// Random-pair probe of strict convexity for a sampled 2-D convex function;
/// node pairs are drawn with matching index parity so the midpoint is a node.
StrictConvexityReport strict_convexity_probe(const GridFn& f, std::size_t samples, std::uint64_t seed = 1);

struct DualRecursionReport {
  /// max |q_{n+1}* - (p_n* + q_n*) / 2| over the checked dual nodes.
  double mean_of_conjugates = 0.0;
  /// max |q_{n+1}* - (q_n* + q_n) / 2|, the alternative reading.
  double literal_reading = 0.0;
  std::size_t nodes = 0;
};

/// Conjugates q_{n+1} = asplund_step(pair).q on a dual grid covering half of
/// the stepped region and compares it with both readings of the dual
/// recursion.
DualRecursionReport dual_recursion_check(const NormPair& pair, std::size_t dual_count = 41);

}  // namespace cca
