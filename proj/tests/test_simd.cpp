#include <doctest.h>

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "cca/simd/kernels.hpp"
#include "oracles.hpp"

using namespace cca::simd;

namespace {

bool same(const ArgResult& a, const ArgResult& b) {
  return std::bit_cast<std::uint64_t>(a.value) == std::bit_cast<std::uint64_t>(b.value) && a.index == b.index;
}

// Values from a small lattice so that ties are frequent, with some +inf.
std::vector<double> lattice(std::mt19937_64& rng, std::size_t n, double inf_rate) {
  std::uniform_int_distribution<int> v(-6, 6);
  std::bernoulli_distribution inf(inf_rate);
  std::vector<double> out(n);
  for (double& x : out) x = inf(rng) ? oracle::kInf : 0.25 * v(rng);
  return out;
}

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("backends agree bit for bit, ties to the smallest index") {
    if (!backend_available(Backend::kAvx2)) {
      MESSAGE("AVX2 unavailable; scalar only");
      return;
    }
    const KernelTable& s = kernels(Backend::kScalar);
    const KernelTable& v = kernels(Backend::kAvx2);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 3000; ++t) {
      const std::size_t n = 1 + rng() % 70;
      const auto x = lattice(rng, n, 0.0);
      const auto f = lattice(rng, n, 0.2);
      const double y = 0.5 * static_cast<double>(static_cast<int>(rng() % 9) - 4);
      CHECK(same(s.argmax_affine(x.data(), f.data(), n, y), v.argmax_affine(x.data(), f.data(), n, y)));
      const auto g = lattice(rng, n, 0.2);
      CHECK(same(s.argmin_sum(f.data(), g.data(), n), v.argmin_sum(f.data(), g.data(), n)));

      const std::size_t dim = 1 + rng() % 2;
      std::vector<double> a0 = lattice(rng, n, 0), a1 = lattice(rng, n, 0), b0 = lattice(rng, n, 0),
                          b1 = lattice(rng, n, 0), pr(n);
      for (std::size_t i = 0; i < n; ++i) pr[i] = a0[i] * b0[i] + (dim == 2 ? a1[i] * b1[i] : 0.0);
      GraphColumns c;
      c.dim = dim;
      c.a[0] = a0.data();
      c.a[1] = a1.data();
      c.as[0] = b0.data();
      c.as[1] = b1.data();
      c.pairing = pr.data();
      c.size = n;
      const double q[2] = {0.25 * static_cast<double>(rng() % 7), -0.5};
      const double qs[2] = {-0.75, 0.25 * static_cast<double>(rng() % 5)};
      const std::size_t begin = rng() % n;
      CHECK(same(s.argmax_fitzpatrick(c, q, qs, begin), v.argmax_fitzpatrick(c, q, qs, begin)));
      CHECK(same(s.argmin_monotone(c, q, qs, begin), v.argmin_monotone(c, q, qs, begin)));
    }
  }

  TEST_CASE("scalar kernels match plain loops") {
    std::mt19937_64 rng(5);
    const KernelTable& s = kernels(Backend::kScalar);
    for (int t = 0; t < 500; ++t) {
      const std::size_t n = 1 + rng() % 40;
      const auto x = lattice(rng, n, 0.0);
      const auto f = lattice(rng, n, 0.3);
      double best = -oracle::kInf;
      std::size_t arg = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double val = 1.5 * x[i] - f[i];
        if (val > best) {
          best = val;
          arg = i;
        }
      }
      const ArgResult r = s.argmax_affine(x.data(), f.data(), n, 1.5);
      CHECK(r.value == best);
      if (best > -oracle::kInf) CHECK(r.index == arg);
    }
  }

  TEST_CASE("backend switching") {
    const Backend before = active_backend();
    set_backend(Backend::kScalar);
    CHECK(active_backend() == Backend::kScalar);
    set_backend(before);
    CHECK(std::string(backend_name(Backend::kScalar)) == "scalar");
  }
}
