#include "cca/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cca/convexity.hpp"
#include "cca/error.hpp"
#include "cca/fenchel.hpp"

namespace cca {

namespace {

std::size_t half_width(const Grid& g, std::size_t d) { return (g.count(d) - 1) / 2; }

// Symmetric grid with the given half-widths (in nodes) and spacing of `g`.
Grid cropped(const Grid& g, std::size_t w0, std::size_t w1) {
  const double h0 = g.spacing(0);
  const double h1 = g.spacing(1);
  const double r0 = static_cast<double>(w0) * h0;
  const double r1 = static_cast<double>(w1) * h1;
  return Grid(Axis{-r0, r0, 2 * w0 + 1}, Axis{-r1, r1, 2 * w1 + 1});
}

void require_pair_grid(const Grid& g) {
  if (g.dim() != 2 || !g.is_symmetric())
    throw ParameterError("renorm: grid must be 2-D, symmetric about 0, with odd counts");
}

GridFn half_square(const FnAtom& a, const Grid& grid) {
  if (a.tag() == AtomTag::kNormHalfSq) return sample(a, grid);
  if (a.tag() != AtomTag::kNorm) throw ParameterError("renorm: '" + a.name() + "' is not a norm atom");
  std::vector<double> v(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double r = a.eval(grid.node(k));
    v[k] = 0.5 * r * r;
  }
  return GridFn(grid, std::move(v));
}

// max over nodes with q > 0 of p / q - 1; `ordered` turns false where p < q.
double max_ratio(const GridFn& p, const GridFn& q, bool& ordered) {
  double r = 0.0;
  ordered = true;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (q[k] <= 0.0) continue;
    const double t = p[k] / q[k] - 1.0;
    if (t < -1e-12) ordered = false;
    r = std::max(r, t);
  }
  return r;
}

}  // namespace

NormPair init_pair(const FnAtom& norm1, const FnAtom& norm2, const Grid& grid) {
  require_pair_grid(grid);
  GridFn p = half_square(norm1, grid);
  GridFn q = half_square(norm2, grid);
  bool ordered = false;
  double C = max_ratio(p, q, ordered);
  bool swapped = false;
  if (!ordered) {
    C = max_ratio(q, p, ordered);
    if (!ordered) throw ParameterError("renorm: the two half-squared norms are not ordered on the grid");
    std::swap(p, q);
    swapped = true;
  }
  NormPair pair = init_pair(std::move(p), std::move(q), C);
  pair.swapped = swapped;
  return pair;
}

NormPair init_pair(GridFn p0, GridFn q0, double C) {
  require_pair_grid(p0.grid());
  if (!(p0.grid() == q0.grid())) throw DimensionError("renorm: p and q must share one grid");
  if (!(C >= 0.0) || !std::isfinite(C)) throw ParameterError("renorm: C must be finite and >= 0");
  for (const GridFn* f : {&p0, &q0})
    for (double v : f->values())
      if (!std::isfinite(v) || v < 0.0) throw ParameterError("renorm: functions must be finite and nonnegative");
  return NormPair{std::move(p0), std::move(q0), 0, C, false};
}

RatioBounds ratio_bounds(const NormPair& pair) {
  RatioBounds b{-kInf, kInf};
  for (std::size_t k = 0; k < pair.p.size(); ++k) {
    if (!(pair.q[k] > 0.0)) continue;
    const double t = pair.p[k] / pair.q[k] - 1.0;
    b.max = std::max(b.max, t);
    b.min = std::min(b.min, t);
  }
  if (b.max == -kInf) b = {0.0, 0.0};
  return b;
}

double default_sandwich_tol(const NormPair& pair) { return 10.0 * pair.p.grid().max_spacing(); }

NormPair asplund_step(const NormPair& pair, double tol) {
  if (tol < 0.0) tol = default_sandwich_tol(pair);
  const Grid& g = pair.p.grid();
  const std::size_t m0 = half_width(g, 0);
  const std::size_t m1 = half_width(g, 1);
  const std::size_t w0 = m0 / 2;
  const std::size_t w1 = m1 / 2;
  if (w0 == 0 || w1 == 0) throw ParameterError("renorm: grid too small for another step");

  const Grid next = cropped(g, w0, w1);
  std::vector<std::size_t> doubled;
  doubled.reserve(next.size());
  for (std::size_t a = 0; a < next.count(0); ++a)
    for (std::size_t b = 0; b < next.count(1); ++b) doubled.push_back(g.flat(m0 - 2 * w0 + 2 * a, m1 - 2 * w1 + 2 * b));
  const GridFn conv = inf_convolution_at(pair.p, pair.q, doubled).value;

  std::vector<double> p(next.size());
  std::vector<double> q(next.size());
  for (std::size_t a = 0; a < next.count(0); ++a)
    for (std::size_t b = 0; b < next.count(1); ++b) {
      const std::size_t k = next.flat(a, b);
      const std::size_t same = g.flat(m0 - w0 + a, m1 - w1 + b);
      p[k] = 0.5 * (pair.p[same] + pair.q[same]);
      q[k] = 0.5 * conv[doubled[k]];
    }

  NormPair out{GridFn(next, std::move(p)), GridFn(next, std::move(q)), pair.n + 1, pair.C, pair.swapped};
  const double factor = 1.0 + std::ldexp(pair.C, -2 * out.n);
  for (std::size_t k = 0; k < next.size(); ++k) {
    if (out.q[k] > out.p[k] + tol || out.p[k] > factor * out.q[k] + tol)
      throw DivergenceError("renorm: sandwich bound violated at step " + std::to_string(out.n) +
                            "; the grid is too coarse");
  }
  return out;
}

StrictConvexityReport strict_convexity_probe(const GridFn& f, std::size_t samples, std::uint64_t seed) {
  if (f.dim() != 2) throw DimensionError("strict_convexity_probe: 2-D functions only");
  const Grid& g = f.grid();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  StrictConvexityReport rep;
  std::size_t attempts = 0;
  while (rep.pairs + rep.ray_pairs < samples && attempts < 100 * samples + 100) {
    ++attempts;
    const std::size_t ka = pick(rng);
    const std::size_t kb = pick(rng);
    if (ka == kb || !std::isfinite(f[ka]) || !std::isfinite(f[kb])) continue;
    // Same index parity per axis puts the midpoint on a node.
    const auto [ai, aj] = g.unflat(ka);
    const auto [bi, bj] = g.unflat(kb);
    if ((ai + bi) % 2 != 0 || (aj + bj) % 2 != 0) continue;
    const double fm = f[g.flat((ai + bi) / 2, (aj + bj) / 2)];
    if (!std::isfinite(fm)) continue;
    const Point a = g.node(ka);
    const Point b = g.node(kb);
    const double d2 = (a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]);
    const double gap = (0.5 * (f[ka] + f[kb]) - fm) / d2;
    // Same ray through the origin: collinear with 0 and on the same side.
    const double cross = a[0] * b[1] - a[1] * b[0];
    const double dot = a[0] * b[0] + a[1] * b[1];
    const double scale = std::hypot(a[0], a[1]) * std::hypot(b[0], b[1]);
    const bool ray = std::abs(cross) <= 1e-12 * std::max(scale, 1e-300) && dot >= 0.0;
    if (ray) {
      ++rep.ray_pairs;
      rep.min_ray_gap = std::min(rep.min_ray_gap, gap);
    } else {
      ++rep.pairs;
      if (gap < rep.min_gap) {
        rep.min_gap = gap;
        rep.worst_a = a;
        rep.worst_b = b;
      }
    }
  }
  return rep;
}

DualRecursionReport dual_recursion_check(const NormPair& pair, std::size_t dual_count) {
  const NormPair next = asplund_step(pair);
  // Slopes up to half the stepped region keep every sup attained inside it.
  const double r = 0.5 * next.region();
  const Grid dual(Axis{-r, r, dual_count}, Axis{-r, r, dual_count});
  const GridFn qs_next = conjugate(next.q, dual).dual;
  const GridFn ps = conjugate(pair.p, dual).dual;
  const GridFn qs = conjugate(pair.q, dual).dual;
  DualRecursionReport rep;
  for (std::size_t k = 0; k < dual.size(); ++k) {
    const Point y = dual.node(k);
    const double qy = pair.q.interpolate(y);
    rep.mean_of_conjugates = std::max(rep.mean_of_conjugates, std::abs(qs_next[k] - 0.5 * (ps[k] + qs[k])));
    rep.literal_reading = std::max(rep.literal_reading, std::abs(qs_next[k] - 0.5 * (qs[k] + qy)));
    ++rep.nodes;
  }
  return rep;
}

}  // namespace cca
