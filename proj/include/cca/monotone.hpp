#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cca/grid.hpp"
#include "cca/grid_fn.hpp"
#include "cca/simd/kernels.hpp"

namespace cca {

/// One element (x, x*) of an operator graph.
struct GraphPair {
  Point x{};
  Point xs{};
};

/// Finite sampled graph {(x, x*)} of an operator on R^1 or R^2.
/// Stored column-wise so the pairwise kernels can stream it.
class OperatorGraph {
 public:
  /// Throws ParameterError for an empty graph or a dimension other than 1, 2.
  OperatorGraph(std::size_t dim, const std::vector<GraphPair>& pairs);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t size() const { return a_[0].size(); }
  [[nodiscard]] GraphPair pair(std::size_t i) const;
  [[nodiscard]] simd::GraphColumns columns() const;
  /// max |x_d| * max |x*_d| over the stored pairs.
  [[nodiscard]] double scale() const { return scale_; }
  /// 1e-8 * (1 + scale()).
  [[nodiscard]] double default_tol() const { return 1e-8 * (1.0 + scale_); }

 private:
  std::size_t dim_;
  std::vector<double> a_[2];
  std::vector<double> as_[2];
  std::vector<double> pairing_;
  double scale_ = 0.0;
};

/// Graph of the centered finite-difference slope of a 1-D sampled function at
/// interior nodes whose neighbours are finite.
OperatorGraph difference_graph(const GridFn& f);

struct MonotonicityReport {
  bool monotone = true;
  /// Lexicographically first pair (i, j), i < j, with <x_i - x_j, x*_i - x*_j> < -tol.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
  /// Smallest pairwise product inspected.
  double min_product = 0.0;
};

/// Exhaustive O(k^2) monotonicity test.
MonotonicityReport is_monotone(const OperatorGraph& g, std::optional<double> tol = std::nullopt);

/// True iff <x - a, x* - a*> >= -tol against every stored pair.
bool monotonically_related(const OperatorGraph& g, const GraphPair& candidate, std::optional<double> tol = std::nullopt);

struct FitzpatrickEval {
  GraphPair query;
  double value = 0.0;
  /// Graph row attaining the sup (smallest index on ties).
  std::size_t index = 0;
};

/// F(x, x*) = max over stored (a, a*) of <x, a*> + <a, x*> - <a, a*>.
FitzpatrickEval fitzpatrick(const OperatorGraph& g, const GraphPair& query);

struct ResolventResult {
  /// J_{lambda A}(z) = prox_{lambda f}(z).
  Point x{};
  /// A_lambda(z) = (z - x) / lambda, a certified element of (d f)(x).
  Point y{};
  double lambda = 1.0;
  double certificate_eps = 0.0;
  bool on_grid_boundary = false;
};

/// Resolvent of A = (d f) for convex sampled f, through the prox.
ResolventResult resolvent(const GridFn& f, double lambda, const Point& z);

/// Yosida approximation A_lambda(z) = (z - J_{lambda A} z) / lambda.
Point yosida(const GridFn& f, double lambda, const Point& z);

struct SurjectivityEntry {
  Point target{};
  Point x{};
  Point y{};
  /// |z - (x + lambda y)|.
  double residual = 0.0;
  double certificate_eps = 0.0;
  /// The solution sits on the grid boundary; the grid has to be widened.
  bool widen_grid = false;
};

struct SurjectivityReport {
  std::vector<SurjectivityEntry> entries;
  std::size_t solved = 0;
  double max_residual = 0.0;
  double max_certificate_eps = 0.0;
};

/// Solves z in x + lambda (d f)(x) for every target (Minty's surjectivity
/// criterion for A = d f, restricted to a finite target set).
SurjectivityReport surjectivity_probe(const GridFn& f, std::span<const Point> targets, double lambda = 1.0);

}  // namespace cca
