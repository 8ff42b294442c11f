// Compiled with -mavx2 (and deliberately without -mfma); only reached after
// the dispatcher has confirmed AVX2 support at runtime.
#include <immintrin.h>

#include <limits>

#include "cca/simd/kernels.hpp"

namespace cca::simd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

// Lane-wise running extremum with its index. Indices are carried as doubles,
// exact below 2^53.
template <bool kMax>
struct Tracker {
  __m256d best;
  __m256d idx;
  __m256d cur;

  explicit Tracker(std::size_t begin)
      : best(_mm256_set1_pd(kMax ? kNegInf : kPosInf)),
        idx(_mm256_setr_pd(static_cast<double>(begin), static_cast<double>(begin + 1), static_cast<double>(begin + 2),
                           static_cast<double>(begin + 3))),
        cur(idx) {}

  void update(__m256d v) {
    const __m256d better = kMax ? _mm256_cmp_pd(v, best, _CMP_GT_OQ) : _mm256_cmp_pd(v, best, _CMP_LT_OQ);
    best = _mm256_blendv_pd(best, v, better);
    idx = _mm256_blendv_pd(idx, cur, better);
    cur = _mm256_add_pd(cur, _mm256_set1_pd(4.0));
  }

  // Lane winner: best value, smallest index among equal values.
  ArgResult reduce() const {
    alignas(32) double bv[4];
    alignas(32) double bi[4];
    _mm256_store_pd(bv, best);
    _mm256_store_pd(bi, idx);
    ArgResult r{bv[0], static_cast<std::size_t>(bi[0])};
    for (int l = 1; l < 4; ++l) {
      const auto li = static_cast<std::size_t>(bi[l]);
      const bool better = kMax ? bv[l] > r.value : bv[l] < r.value;
      if (better || (bv[l] == r.value && li < r.index)) r = {bv[l], li};
    }
    return r;
  }
};

ArgResult argmax_affine(const double* x, const double* f, std::size_t n, double y) {
  if (n < 4) return detail::kScalarTable.argmax_affine(x, f, n, y);
  Tracker<true> t(0);
  const __m256d vy = _mm256_set1_pd(y);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_sub_pd(_mm256_mul_pd(vy, _mm256_loadu_pd(x + i)), _mm256_loadu_pd(f + i));
    t.update(v);
  }
  ArgResult best = t.reduce();
  for (; i < n; ++i) {
    const double v = y * x[i] - f[i];
    if (v > best.value) best = {v, i};
  }
  return best;
}

ArgResult argmin_sum(const double* a, const double* b, std::size_t n) {
  if (n < 4) return detail::kScalarTable.argmin_sum(a, b, n);
  Tracker<false> t(0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) t.update(_mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  ArgResult best = t.reduce();
  for (; i < n; ++i) {
    const double v = a[i] + b[i];
    if (v < best.value) best = {v, i};
  }
  return best;
}

ArgResult argmax_fitzpatrick(const GraphColumns& g, const double* q, const double* qs, std::size_t begin) {
  if (g.size < begin + 4) return detail::kScalarTable.argmax_fitzpatrick(g, q, qs, begin);
  Tracker<true> t(begin);
  const __m256d q0 = _mm256_set1_pd(q[0]);
  const __m256d qs0 = _mm256_set1_pd(qs[0]);
  std::size_t i = begin;
  if (g.dim == 1) {
    for (; i + 4 <= g.size; i += 4) {
      const __m256d s = _mm256_add_pd(_mm256_mul_pd(q0, _mm256_loadu_pd(g.as[0] + i)),
                                      _mm256_mul_pd(qs0, _mm256_loadu_pd(g.a[0] + i)));
      t.update(_mm256_sub_pd(s, _mm256_loadu_pd(g.pairing + i)));
    }
  } else {
    const __m256d q1 = _mm256_set1_pd(q[1]);
    const __m256d qs1 = _mm256_set1_pd(qs[1]);
    for (; i + 4 <= g.size; i += 4) {
      const __m256d s0 = _mm256_add_pd(_mm256_mul_pd(q0, _mm256_loadu_pd(g.as[0] + i)),
                                       _mm256_mul_pd(qs0, _mm256_loadu_pd(g.a[0] + i)));
      const __m256d s1 = _mm256_add_pd(_mm256_mul_pd(q1, _mm256_loadu_pd(g.as[1] + i)),
                                       _mm256_mul_pd(qs1, _mm256_loadu_pd(g.a[1] + i)));
      t.update(_mm256_sub_pd(_mm256_add_pd(s0, s1), _mm256_loadu_pd(g.pairing + i)));
    }
  }
  ArgResult best = t.reduce();
  if (i < g.size) {
    const ArgResult tail = detail::kScalarTable.argmax_fitzpatrick(g, q, qs, i);
    if (tail.value > best.value) best = tail;
  }
  return best;
}

ArgResult argmin_monotone(const GraphColumns& g, const double* p, const double* ps, std::size_t begin) {
  if (g.size < begin + 4) return detail::kScalarTable.argmin_monotone(g, p, ps, begin);
  Tracker<false> t(begin);
  const __m256d p0 = _mm256_set1_pd(p[0]);
  const __m256d ps0 = _mm256_set1_pd(ps[0]);
  std::size_t i = begin;
  if (g.dim == 1) {
    for (; i + 4 <= g.size; i += 4) {
      t.update(_mm256_mul_pd(_mm256_sub_pd(p0, _mm256_loadu_pd(g.a[0] + i)),
                             _mm256_sub_pd(ps0, _mm256_loadu_pd(g.as[0] + i))));
    }
  } else {
    const __m256d p1 = _mm256_set1_pd(p[1]);
    const __m256d ps1 = _mm256_set1_pd(ps[1]);
    for (; i + 4 <= g.size; i += 4) {
      const __m256d m0 = _mm256_mul_pd(_mm256_sub_pd(p0, _mm256_loadu_pd(g.a[0] + i)),
                                       _mm256_sub_pd(ps0, _mm256_loadu_pd(g.as[0] + i)));
      const __m256d m1 = _mm256_mul_pd(_mm256_sub_pd(p1, _mm256_loadu_pd(g.a[1] + i)),
                                       _mm256_sub_pd(ps1, _mm256_loadu_pd(g.as[1] + i)));
      t.update(_mm256_add_pd(m0, m1));
    }
  }
  ArgResult best = t.reduce();
  if (i < g.size) {
    const ArgResult tail = detail::kScalarTable.argmin_monotone(g, p, ps, i);
    if (tail.value < best.value) best = tail;
  }
  return best;
}

}  // namespace

namespace detail {
const KernelTable kAvx2Table = {argmax_affine, argmin_sum, argmax_fitzpatrick, argmin_monotone};
}  // namespace detail

}  // namespace cca::simd
