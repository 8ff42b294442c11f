#pragma once

// Data-parallel inner loops shared by the brute-force transforms.
//
// Every kernel exists as a scalar reference and, on x86-64, an AVX2 variant.
// Both evaluate each element with the same expression tree and no fused
// multiply-add, and both break ties toward the smallest index, so the two
// backends return bit-identical results. The active backend is chosen once
// at startup from CPUID; CCA_SIMD=scalar|avx2 overrides the choice.

#include <cstddef>
#include <span>

namespace cca::simd {

enum class Backend { kScalar, kAvx2 };

struct ArgResult {
  double value;
  std::size_t index;
};

/// Graph columns for the sampled-operator kernels; `a` are points, `as` dual
/// points, one pointer per coordinate (dim 1 or 2).
struct GraphColumns {
  std::size_t dim = 1;
  const double* a[2] = {nullptr, nullptr};
  const double* as[2] = {nullptr, nullptr};
  const double* pairing = nullptr;  // <a_i, as_i>
  std::size_t size = 0;
};

struct KernelTable {
  /// max_i y * x[i] - f[i] over i < n.
  ArgResult (*argmax_affine)(const double* x, const double* f, std::size_t n, double y);
  /// min_i a[i] + b[i] over i < n.
  ArgResult (*argmin_sum)(const double* a, const double* b, std::size_t n);
  /// max_i <q, as_i> + <a_i, qs> - <a_i, as_i> over graph rows [begin, size).
  ArgResult (*argmax_fitzpatrick)(const GraphColumns& g, const double* q, const double* qs, std::size_t begin);
  /// min_i <p - a_i, ps - as_i> over graph rows [begin, size).
  ArgResult (*argmin_monotone)(const GraphColumns& g, const double* p, const double* ps, std::size_t begin);
};

[[nodiscard]] bool backend_available(Backend b);
[[nodiscard]] const char* backend_name(Backend b);

/// Kernel table of a specific backend; throws if it is unavailable.
[[nodiscard]] const KernelTable& kernels(Backend b);
/// Kernel table of the active backend.
[[nodiscard]] const KernelTable& kernels();

[[nodiscard]] Backend active_backend();
/// Switches the process-wide backend (tests use this to compare paths).
void set_backend(Backend b);

// Convenience wrappers over the active backend.
inline ArgResult argmax_affine(std::span<const double> x, std::span<const double> f, double y) {
  return kernels().argmax_affine(x.data(), f.data(), x.size(), y);
}
inline ArgResult argmin_sum(std::span<const double> a, std::span<const double> b) {
  return kernels().argmin_sum(a.data(), b.data(), a.size());
}

namespace detail {
extern const KernelTable kScalarTable;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable kAvx2Table;
#endif
}  // namespace detail

}  // namespace cca::simd
