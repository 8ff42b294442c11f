#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cca/simd/kernels.hpp"

namespace cca::simd {

namespace {

Backend detect() {
  Backend b = backend_available(Backend::kAvx2) ? Backend::kAvx2 : Backend::kScalar;
  if (const char* env = std::getenv("CCA_SIMD")) {
    const std::string_view v(env);
    if (v == "scalar") b = Backend::kScalar;
    else if (v == "avx2" && backend_available(Backend::kAvx2)) b = Backend::kAvx2;
  }
  return b;
}

struct Active {
  std::atomic<Backend> backend;
  std::atomic<const KernelTable*> table;
};

Active& active() {
  static Active a{detect(), &kernels(detect())};
  return a;
}

}  // namespace

bool backend_available(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const char* backend_name(Backend b) { return b == Backend::kAvx2 ? "avx2" : "scalar"; }

const KernelTable& kernels(Backend b) {
  if (!backend_available(b)) throw std::runtime_error(std::string("SIMD backend unavailable: ") + backend_name(b));
#if defined(__x86_64__) || defined(_M_X64)
  if (b == Backend::kAvx2) return detail::kAvx2Table;
#endif
  return detail::kScalarTable;
}

const KernelTable& kernels() { return *active().table.load(std::memory_order_relaxed); }

Backend active_backend() { return active().backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) throw std::runtime_error(std::string("SIMD backend unavailable: ") + backend_name(b));
  active().backend.store(b, std::memory_order_relaxed);
  active().table.store(&kernels(b), std::memory_order_relaxed);
}

}  // namespace cca::simd
