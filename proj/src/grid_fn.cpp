#include "cca/grid_fn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cca/error.hpp"

namespace cca {

GridFn::GridFn(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw DimensionError("grid function has " + std::to_string(values_.size()) + " values for " +
                         std::to_string(grid_.size()) + " nodes");
  for (const double v : values_)
    if (std::isnan(v)) throw FormatError("grid function values must not be NaN");
}

GridFn::GridFn(Grid grid, double fill) : GridFn(grid, std::vector<double>(grid.size(), fill)) {}

bool GridFn::is_proper() const {
  bool any_finite = false;
  for (const double v : values_) {
    if (v == -kInf) return false;
    any_finite = any_finite || std::isfinite(v);
  }
  return any_finite;
}

void GridFn::require_proper(const char* what) const {
  if (!is_proper()) throw ImproperError(std::string(what) + ": function is not proper");
}

double GridFn::finite_scale() const {
  double s = 0.0;
  for (const double v : values_)
    if (std::isfinite(v)) s = std::max(s, std::abs(v));
  return s;
}

std::size_t GridFn::argmin() const {
  return static_cast<std::size_t>(std::min_element(values_.begin(), values_.end()) - values_.begin());
}

namespace {

// Bracketing cell and weight of the upper node along one axis.
struct Cell {
  std::size_t i0;
  std::size_t i1;
  double w1;
};

Cell locate(const Axis& ax, double x) {
  const double t = (x - ax.lo) / ax.spacing();
  auto i0 = static_cast<std::size_t>(std::floor(t));
  if (i0 >= ax.count - 1) i0 = ax.count - 2;
  double w1 = t - static_cast<double>(i0);
  w1 = std::clamp(w1, 0.0, 1.0);
  return {i0, i0 + 1, w1};
}

}  // namespace

double GridFn::interpolate(const Point& x) const {
  if (!grid_.contains(x)) return kInf;
  const Cell cx = locate(grid_.axis(0), x[0]);
  if (grid_.dim() == 1) {
    double acc = 0.0;
    if (cx.w1 < 1.0) acc += (1.0 - cx.w1) * values_[cx.i0];
    if (cx.w1 > 0.0) acc += cx.w1 * values_[cx.i1];
    return acc;
  }
  const Cell cy = locate(grid_.axis(1), x[1]);
  double acc = 0.0;
  const std::size_t is[2] = {cx.i0, cx.i1};
  const double wx[2] = {1.0 - cx.w1, cx.w1};
  const std::size_t js[2] = {cy.i0, cy.i1};
  const double wy[2] = {1.0 - cy.w1, cy.w1};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const double w = wx[a] * wy[b];
      if (w > 0.0) acc += w * values_[grid_.flat(is[a], js[b])];
    }
  return acc;
}

}  // namespace cca
