#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "cca/ext_real.hpp"
#include "cca/grid.hpp"

namespace cca {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// An extended-real-valued function sampled on a uniform grid.
///
/// The object stands for f + indicator(grid box): every transform treats
/// points outside the box as +inf. Values are plain doubles where IEEE
/// infinities encode +inf/-inf; NaN is rejected at construction.
class GridFn {
 public:
  GridFn() = default;
  GridFn(Grid grid, std::vector<double> values);
  /// Constant function on the grid.
  GridFn(Grid grid, double fill);

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] std::size_t dim() const { return grid_.dim(); }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] double operator[](std::size_t k) const { return values_[k]; }
  [[nodiscard]] ExtReal at(std::size_t k) const { return ExtReal(values_[k]); }

  /// At least one finite value and no -inf.
  [[nodiscard]] bool is_proper() const;
  /// Throws ImproperError unless is_proper().
  void require_proper(const char* what) const;

  /// Largest |value| over finite nodes (0 if none).
  [[nodiscard]] double finite_scale() const;

  /// Flat index of the smallest value (smallest index among ties).
  [[nodiscard]] std::size_t argmin() const;

  /// Multilinear interpolation of the samples; +inf outside the box or when a
  /// contributing corner is +inf.
  [[nodiscard]] double interpolate(const Point& x) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

}  // namespace cca
