#include "cca/convexity.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cca/error.hpp"

namespace cca {

namespace {

struct Direction {
  long di;
  long dj;
};

constexpr std::array<Direction, 8> kDirections2d = {
    Direction{1, 0}, Direction{0, 1}, Direction{1, 1}, Direction{1, -1},
    Direction{1, 2}, Direction{2, 1}, Direction{1, -2}, Direction{2, -1},
};

class Checker {
 public:
  Checker(const GridFn& f, double tol) : f_(f), tol_(tol * std::max(1.0, f.finite_scale())) {}

  // Walks one lattice line given by its node sequence.
  template <class NodeAt>
  void walk(std::size_t len, NodeAt node_at) {
    bool seen_finite = false;
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::size_t gap_start = kNone;
    for (std::size_t t = 0; t < len; ++t) {
      const std::size_t k = node_at(t);
      const double v = f_[k];
      if (std::isfinite(v)) {
        if (gap_start != kNone) {
          report_.domain_gap = true;
          flag(gap_start);
          gap_start = kNone;
        }
        seen_finite = true;
      } else if (seen_finite && gap_start == kNone) {
        gap_start = k;
      }
      if (t >= 2) {
        const double a = f_[node_at(t - 2)];
        const double b = f_[node_at(t - 1)];
        if (std::isfinite(a) && std::isfinite(b) && std::isfinite(v)) {
          const double d2 = a - 2.0 * b + v;
          report_.worst_second_difference = std::min(report_.worst_second_difference, d2);
          if (d2 < -tol_) flag(node_at(t - 1));
        }
      }
    }
  }

  ConvexityReport finish() && { return report_; }

 private:
  void flag(std::size_t k) {
    report_.convex = false;
    if (!report_.violation || k < *report_.violation) report_.violation = k;
  }

  const GridFn& f_;
  double tol_;
  ConvexityReport report_;
};

}  // namespace

ConvexityReport discrete_convexity_check(const GridFn& f, double tol) {
  bool any_finite = false;
  for (const double v : f.values()) {
    if (v == -kInf) throw ImproperError("convexity check: function takes the value -inf");
    any_finite = any_finite || std::isfinite(v);
  }
  if (!any_finite) throw DomainError("convexity check: domain is empty (all values +inf)");

  Checker checker(f, tol);
  const Grid& g = f.grid();
  if (g.dim() == 1) {
    checker.walk(g.size(), [](std::size_t t) { return t; });
    return std::move(checker).finish();
  }

  const long n0 = static_cast<long>(g.count(0));
  const long n1 = static_cast<long>(g.count(1));
  auto inside = [&](long i, long j) { return i >= 0 && i < n0 && j >= 0 && j < n1; };
  for (const Direction d : kDirections2d) {
    // A line starts at every node whose predecessor lies outside the grid.
    for (long i = 0; i < n0; ++i)
      for (long j = 0; j < n1; ++j) {
        if (inside(i - d.di, j - d.dj)) continue;
        std::size_t len = 0;
        while (inside(i + static_cast<long>(len) * d.di, j + static_cast<long>(len) * d.dj)) ++len;
        if (len < 2) continue;
        checker.walk(len, [&](std::size_t t) {
          const long ti = static_cast<long>(t);
          return g.flat(static_cast<std::size_t>(i + ti * d.di), static_cast<std::size_t>(j + ti * d.dj));
        });
      }
  }
  return std::move(checker).finish();
}

}  // namespace cca
