#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cca {

/// One uniform axis: `count` nodes from `lo` to `hi` inclusive.
struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 2;

  [[nodiscard]] double spacing() const { return (hi - lo) / static_cast<double>(count - 1); }
  [[nodiscard]] double node(std::size_t i) const;

  /// Index of the node nearest to `x`, clamped to the axis.
  [[nodiscard]] std::size_t nearest(double x) const;

  friend bool operator==(const Axis&, const Axis&) = default;
};

/// A point in R^1 or R^2; the second coordinate is ignored for 1-D grids.
using Point = std::array<double, 2>;

/// Uniform tensor grid in one or two dimensions, stored row-major: node
/// (i, j) lives at flat index i * count(1) + j, with i along axis 0.
class Grid {
 public:
  static constexpr std::size_t kDefaultNodeCap = 4'000'000;

  Grid() = default;
  explicit Grid(Axis a, std::size_t node_cap = kDefaultNodeCap);
  Grid(Axis a, Axis b, std::size_t node_cap = kDefaultNodeCap);

  /// Parses "lo:hi:count" or "lo:hi:countxlo:hi:count".
  static Grid parse(const std::string& text, std::size_t node_cap = kDefaultNodeCap);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const Axis& axis(std::size_t d) const { return axes_[d]; }
  [[nodiscard]] std::size_t count(std::size_t d) const { return d < dim_ ? axes_[d].count : 1; }
  [[nodiscard]] double spacing(std::size_t d) const { return axes_[d].spacing(); }
  [[nodiscard]] double max_spacing() const;
  [[nodiscard]] std::size_t size() const { return count(0) * count(1); }

  [[nodiscard]] std::size_t flat(std::size_t i, std::size_t j = 0) const { return i * count(1) + j; }
  [[nodiscard]] std::array<std::size_t, 2> unflat(std::size_t k) const { return {k / count(1), k % count(1)}; }
  [[nodiscard]] Point node(std::size_t k) const;

  [[nodiscard]] bool contains(const Point& x) const;
  [[nodiscard]] bool on_boundary(std::size_t k) const;
  [[nodiscard]] std::size_t nearest(const Point& x) const;

  /// Index offset of the origin along axis d, if lo/h is an integer (the
  /// displacement lattice of the grid then coincides with its nodes).
  [[nodiscard]] std::optional<long> origin_offset(std::size_t d) const;

  /// True when each axis is symmetric about 0 with an odd count.
  [[nodiscard]] bool is_symmetric() const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Grid& a, const Grid& b) {
    if (a.dim_ != b.dim_) return false;
    for (std::size_t d = 0; d < a.dim_; ++d)
      if (!(a.axes_[d] == b.axes_[d])) return false;
    return true;
  }

 private:
  void validate(std::size_t node_cap) const;

  std::size_t dim_ = 0;
  std::array<Axis, 2> axes_{};
};

}  // namespace cca
