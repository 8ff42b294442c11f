#include "cca/quadrature.hpp"

#include <cmath>
#include <algorithm>
#include <string>
#include <vector>

#include "cca/error.hpp"

namespace cca {

namespace {

constexpr double kXk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod abscissae kXk[1], kXk[3], kXk[5], kXk[7].
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece kronrod(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  const double fc = f(c);
  double k = kWk[7] * fc;
  double g = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double s = f(c - r * kXk[i]) + f(c + r * kXk[i]);
    k += kWk[i] * s;
    if (i % 2 == 1) g += kWg[i / 2] * s;
  }
  return {a, b, k * r, std::abs((k - g) * r)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, double rel_tol,
                           std::size_t max_intervals) {
  std::vector<Piece> heap{kronrod(f, a, b)};
  double value = heap.front().value;
  double error = heap.front().error;
  std::size_t evals = 15;
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (heap.size() >= max_intervals || !std::isfinite(value))
      throw AccuracyError("integrate: no convergence on [" + std::to_string(a) + ", " + std::to_string(b) +
                          "], error estimate " + std::to_string(error));
    std::pop_heap(heap.begin(), heap.end());
    const Piece worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    for (const Piece& half : {kronrod(f, worst.a, mid), kronrod(f, mid, worst.b)}) {
      heap.push_back(half);
      std::push_heap(heap.begin(), heap.end());
    }
    evals += 30;
    // Re-sum instead of updating incrementally so rounding does not drift.
    value = 0.0;
    error = 0.0;
    for (const Piece& p : heap) {
      value += p.value;
      error += p.error;
    }
  }
  return {value, error, evals};
}

}  // namespace cca
