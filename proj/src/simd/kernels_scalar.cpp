#include <limits>

#include "cca/simd/kernels.hpp"

namespace cca::simd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

ArgResult argmax_affine(const double* x, const double* f, std::size_t n, double y) {
  ArgResult best{kNegInf, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double v = y * x[i] - f[i];
    if (v > best.value) best = {v, i};
  }
  return best;
}

ArgResult argmin_sum(const double* a, const double* b, std::size_t n) {
  ArgResult best{kPosInf, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double v = a[i] + b[i];
    if (v < best.value) best = {v, i};
  }
  return best;
}

ArgResult argmax_fitzpatrick(const GraphColumns& g, const double* q, const double* qs, std::size_t begin) {
  ArgResult best{kNegInf, begin};
  if (g.dim == 1) {
    for (std::size_t i = begin; i < g.size; ++i) {
      const double v = (q[0] * g.as[0][i] + qs[0] * g.a[0][i]) - g.pairing[i];
      if (v > best.value) best = {v, i};
    }
  } else {
    for (std::size_t i = begin; i < g.size; ++i) {
      const double v =
          ((q[0] * g.as[0][i] + qs[0] * g.a[0][i]) + (q[1] * g.as[1][i] + qs[1] * g.a[1][i])) - g.pairing[i];
      if (v > best.value) best = {v, i};
    }
  }
  return best;
}

ArgResult argmin_monotone(const GraphColumns& g, const double* p, const double* ps, std::size_t begin) {
  ArgResult best{kPosInf, begin};
  if (g.dim == 1) {
    for (std::size_t i = begin; i < g.size; ++i) {
      const double v = (p[0] - g.a[0][i]) * (ps[0] - g.as[0][i]);
      if (v < best.value) best = {v, i};
    }
  } else {
    for (std::size_t i = begin; i < g.size; ++i) {
      const double v = (p[0] - g.a[0][i]) * (ps[0] - g.as[0][i]) + (p[1] - g.a[1][i]) * (ps[1] - g.as[1][i]);
      if (v < best.value) best = {v, i};
    }
  }
  return best;
}

}  // namespace

namespace detail {
const KernelTable kScalarTable = {argmax_affine, argmin_sum, argmax_fitzpatrick, argmin_monotone};
}  // namespace detail

}  // namespace cca::simd
