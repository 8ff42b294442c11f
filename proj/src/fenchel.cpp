#include "cca/fenchel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cca/error.hpp"
#include "cca/simd/kernels.hpp"

namespace cca {

namespace {

std::vector<double> axis_nodes(const Axis& ax) {
  std::vector<double> xs(ax.count);
  for (std::size_t i = 0; i < ax.count; ++i) xs[i] = ax.node(i);
  return xs;
}

void require_same_dim(const GridFn& f, const Grid& dual_grid, const char* what) {
  if (f.dim() != dual_grid.dim())
    throw DimensionError(std::string(what) + ": primal grid is " + std::to_string(f.dim()) + "-D but dual grid is " +
                         std::to_string(dual_grid.dim()) + "-D");
}

// One-dimensional transform of a single line: out[l] = max_i ys[l] * xs[i] - f[i].
using LineTransform = void (*)(std::span<const double> xs, double h, std::span<const double> f,
                               std::span<const double> ys, std::span<double> out, std::span<std::size_t> arg);

void line_oracle(std::span<const double> xs, double /*h*/, std::span<const double> f, std::span<const double> ys,
                 std::span<double> out, std::span<std::size_t> arg) {
  const simd::KernelTable& k = simd::kernels();
  for (std::size_t l = 0; l < ys.size(); ++l) {
    const simd::ArgResult r = k.argmax_affine(xs.data(), f.data(), xs.size(), ys[l]);
    out[l] = r.value;
    arg[l] = r.index;
  }
}

void line_fast(std::span<const double> xs, double h, std::span<const double> f, std::span<const double> ys,
               std::span<double> out, std::span<std::size_t> arg) {
  // Lower convex hull of the finite samples (monotone chain; collinear points
  // are dropped, so ties along an edge resolve to its left vertex).
  std::vector<std::size_t> hull;
  hull.reserve(xs.size());
  double fscale = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(f[i])) continue;
    fscale = std::max(fscale, std::abs(f[i]));
    while (hull.size() >= 2) {
      const std::size_t o = hull[hull.size() - 2];
      const std::size_t a = hull.back();
      const double cross = (xs[a] - xs[o]) * (f[i] - f[o]) - (f[a] - f[o]) * (xs[i] - xs[o]);
      if (cross > 0.0) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }
  if (hull.empty()) {
    std::fill(out.begin(), out.end(), -kInf);
    std::fill(arg.begin(), arg.end(), std::size_t{0});
    return;
  }

  const std::size_t nv = hull.size();
  std::vector<double> slope(nv > 1 ? nv - 1 : 0);
  for (std::size_t e = 0; e + 1 < nv; ++e)
    slope[e] = (f[hull[e + 1]] - f[hull[e]]) / (xs[hull[e + 1]] - xs[hull[e]]);

  // Dual nodes closer than `tau` to an edge slope may tie with points on that
  // edge once rounding is accounted for; those edges are rescanned exactly.
  double xmax = 0.0;
  for (const double x : xs) xmax = std::max(xmax, std::abs(x));
  double ymax = 0.0;
  for (const double y : ys) ymax = std::max(ymax, std::abs(y));
  const double tau = 1e-12 * (1.0 + fscale + xmax * ymax) / h;

  const simd::KernelTable& k = simd::kernels();
  std::size_t v = 0;
  for (std::size_t l = 0; l < ys.size(); ++l) {
    const double y = ys[l];
    while (v + 1 < nv && slope[v] < y) ++v;
    std::size_t left = v;
    while (left > 0 && std::abs(slope[left - 1] - y) <= tau) --left;
    std::size_t right = v;
    while (right + 1 < nv && std::abs(slope[right] - y) <= tau) ++right;
    if (left == right) {
      const std::size_t i = hull[v];
      out[l] = y * xs[i] - f[i];
      arg[l] = i;
    } else {
      const std::size_t a = hull[left];
      const std::size_t b = hull[right];
      const simd::ArgResult r = k.argmax_affine(xs.data() + a, f.data() + a, b - a + 1, y);
      out[l] = r.value;
      arg[l] = r.index + a;
    }
  }
}

ConjugateResult conjugate_impl(const GridFn& f, const Grid& dual_grid, LineTransform line, const char* what) {
  f.require_proper(what);
  require_same_dim(f, dual_grid, what);
  const Grid& g = f.grid();

  if (g.dim() == 1) {
    const std::vector<double> xs = axis_nodes(g.axis(0));
    const std::vector<double> ys = axis_nodes(dual_grid.axis(0));
    std::vector<double> out(ys.size());
    std::vector<std::size_t> arg(ys.size());
    line(xs, g.spacing(0), f.values(), ys, out, arg);
    return {GridFn(dual_grid, std::move(out)), std::move(arg)};
  }

  // Axis 1 first: inner(i, l) = max_j y1[l] * x1[j] - f(i, j).
  const std::size_t n0 = g.count(0);
  const std::size_t n1 = g.count(1);
  const std::size_t m0 = dual_grid.count(0);
  const std::size_t m1 = dual_grid.count(1);
  const std::vector<double> x0 = axis_nodes(g.axis(0));
  const std::vector<double> x1 = axis_nodes(g.axis(1));
  const std::vector<double> y0 = axis_nodes(dual_grid.axis(0));
  const std::vector<double> y1 = axis_nodes(dual_grid.axis(1));

  std::vector<double> inner(n0 * m1);
  std::vector<std::size_t> inner_arg(n0 * m1);
  for (std::size_t i = 0; i < n0; ++i)
    line(x1, g.spacing(1), f.values().subspan(i * n1, n1), y1, std::span(inner).subspan(i * m1, m1),
         std::span(inner_arg).subspan(i * m1, m1));

  // Then axis 0 on -inner, so each value reads y0 * x0 - (-(y1 * x1 - f)).
  std::vector<double> out(m0 * m1);
  std::vector<std::size_t> arg(m0 * m1);
  std::vector<double> column(n0);
  std::vector<double> col_out(m0);
  std::vector<std::size_t> col_arg(m0);
  for (std::size_t l = 0; l < m1; ++l) {
    for (std::size_t i = 0; i < n0; ++i) column[i] = -inner[i * m1 + l];
    line(x0, g.spacing(0), column, y0, col_out, col_arg);
    for (std::size_t kk = 0; kk < m0; ++kk) {
      const std::size_t i = col_arg[kk];
      out[kk * m1 + l] = col_out[kk];
      arg[kk * m1 + l] = i * n1 + inner_arg[i * m1 + l];
    }
  }
  return {GridFn(dual_grid, std::move(out)), std::move(arg)};
}

}  // namespace

ConjugateResult conjugate(const GridFn& f, const Grid& dual_grid) {
  return conjugate_impl(f, dual_grid, line_fast, "conjugate");
}

ConjugateResult conjugate_oracle(const GridFn& f, const Grid& dual_grid) {
  return conjugate_impl(f, dual_grid, line_oracle, "conjugate_oracle");
}

double conjugate_at(const GridFn& f, const Point& y) {
  const Grid& g = f.grid();
  const simd::KernelTable& k = simd::kernels();
  const std::vector<double> x0 = axis_nodes(g.axis(0));
  if (g.dim() == 1) return k.argmax_affine(x0.data(), f.values().data(), x0.size(), y[0]).value;
  const std::vector<double> x1 = axis_nodes(g.axis(1));
  const std::size_t n1 = g.count(1);
  std::vector<double> neg_inner(g.count(0));
  for (std::size_t i = 0; i < neg_inner.size(); ++i)
    neg_inner[i] = -k.argmax_affine(x1.data(), f.values().data() + i * n1, n1, y[1]).value;
  return k.argmax_affine(x0.data(), neg_inner.data(), x0.size(), y[0]).value;
}

GridFn biconjugate(const GridFn& f, const Grid& dual_grid) {
  const ConjugateResult once = conjugate(f, dual_grid);
  return conjugate(once.dual, f.grid()).dual;
}

InfConvResult inf_convolution_at(const GridFn& f, const GridFn& g, std::span<const std::size_t> outputs) {
  f.require_proper("inf_convolution");
  g.require_proper("inf_convolution");
  if (!(f.grid() == g.grid())) throw DimensionError("inf_convolution: f and g must share one grid");
  const Grid& grid = f.grid();
  const std::size_t dim = grid.dim();
  long off[2] = {0, 0};
  for (std::size_t d = 0; d < dim; ++d) {
    const auto o = grid.origin_offset(d);
    if (!o) throw DimensionError("inf_convolution: the origin is not on the grid lattice (lo / h must be integral)");
    off[d] = *o;
  }

  const long n0 = static_cast<long>(grid.count(0));
  const long n1 = static_cast<long>(grid.count(1));
  // g reversed along the innermost scanned axis: in 1-D g(k) == grev[n0 - 1 - k],
  // in 2-D g(k0, k1) == grev[k0 * n1 + (n1 - 1 - k1)].
  std::vector<double> grev(grid.size());
  if (dim == 1) {
    std::reverse_copy(g.values().begin(), g.values().end(), grev.begin());
  } else {
    for (long k0 = 0; k0 < n0; ++k0)
      for (long k1 = 0; k1 < n1; ++k1) grev[k0 * n1 + (n1 - 1 - k1)] = g[static_cast<std::size_t>(k0 * n1 + k1)];
  }

  const simd::KernelTable& kern = simd::kernels();
  std::vector<double> out(grid.size(), kInf);
  std::vector<std::size_t> arg(grid.size(), 0);
  const double* fv = f.values().data();
  for (const std::size_t node : outputs) {
    if (node >= grid.size()) throw DimensionError("inf_convolution: output node out of range");
    const long i0 = static_cast<long>(node) / n1;
    const long i1 = static_cast<long>(node) % n1;
    // x - y lands on node (i - j + off); keep it inside [0, n).
    const long j0_lo = std::max(0L, i0 + off[0] - (n0 - 1));
    const long j0_hi = std::min(n0 - 1, i0 + off[0]);
    const long j1_lo = dim == 2 ? std::max(0L, i1 + off[1] - (n1 - 1)) : 0;
    const long j1_hi = dim == 2 ? std::min(n1 - 1, i1 + off[1]) : 0;
    double best = kInf;
    std::size_t best_arg = 0;
    bool found = false;
    if (dim == 1) {
      if (j0_lo <= j0_hi) {
        const simd::ArgResult r = kern.argmin_sum(fv + j0_lo, grev.data() + (n0 - 1 - i0 - off[0] + j0_lo),
                                                  static_cast<std::size_t>(j0_hi - j0_lo + 1));
        best = r.value;
        best_arg = static_cast<std::size_t>(j0_lo) + r.index;
        found = true;
      }
    } else if (j1_lo <= j1_hi) {
      const auto len = static_cast<std::size_t>(j1_hi - j1_lo + 1);
      for (long j0 = j0_lo; j0 <= j0_hi; ++j0) {
        const long k0 = i0 - j0 + off[0];
        const simd::ArgResult r =
            kern.argmin_sum(fv + j0 * n1 + j1_lo, grev.data() + k0 * n1 + (n1 - 1 - i1 - off[1] + j1_lo), len);
        if (!found || r.value < best) {
          best = r.value;
          best_arg = static_cast<std::size_t>(j0 * n1 + j1_lo) + r.index;
          found = true;
        }
      }
    }
    out[node] = best;
    arg[node] = found ? best_arg : 0;
  }
  return {GridFn(grid, std::move(out)), std::move(arg)};
}

InfConvResult inf_convolution(const GridFn& f, const GridFn& g) {
  std::vector<std::size_t> all(f.grid().size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  return inf_convolution_at(f, g, all);
}

double infconv_dual_check(const GridFn& f, const GridFn& g, const Grid& dual_grid) {
  const GridFn fg = inf_convolution(f, g).value;
  const GridFn lhs = conjugate(fg, dual_grid).dual;
  const GridFn cf = conjugate(f, dual_grid).dual;
  const GridFn cg = conjugate(g, dual_grid).dual;
  double worst = 0.0;
  for (std::size_t k = 0; k < dual_grid.size(); ++k) {
    if (!std::isfinite(lhs[k]) || !std::isfinite(cf[k]) || !std::isfinite(cg[k])) continue;
    worst = std::max(worst, std::abs(lhs[k] - (cf[k] + cg[k])));
  }
  return worst;
}

double default_subdifferential_epsilon(const GridFn& f, std::size_t node) {
  const Grid& g = f.grid();
  const auto [i, j] = g.unflat(node);
  double steep = 1.0;
  auto consider = [&](std::size_t a, std::size_t b, double h) {
    if (std::isfinite(f[a]) && std::isfinite(f[b])) steep = std::max(steep, std::abs(f[b] - f[a]) / h);
  };
  if (i > 0) consider(g.flat(i - 1, j), node, g.spacing(0));
  if (i + 1 < g.count(0)) consider(node, g.flat(i + 1, j), g.spacing(0));
  if (g.dim() == 2) {
    if (j > 0) consider(g.flat(i, j - 1), node, g.spacing(1));
    if (j + 1 < g.count(1)) consider(node, g.flat(i, j + 1), g.spacing(1));
  }
  return 4.0 * g.max_spacing() * steep;
}

SubdifferentialSet subdifferential(const GridFn& f, std::size_t node, const Grid& dual_grid,
                                   std::optional<double> epsilon) {
  if (node >= f.size()) throw DimensionError("subdifferential: node out of range");
  if (!std::isfinite(f[node])) throw DomainError("subdifferential: f(x) is not finite");
  const double eps = epsilon.value_or(default_subdifferential_epsilon(f, node));
  const GridFn fstar = conjugate(f, dual_grid).dual;
  SubdifferentialSet set;
  set.base = f.grid().node(node);
  set.epsilon = eps;
  for (std::size_t k = 0; k < dual_grid.size(); ++k) {
    const Point y = dual_grid.node(k);
    const double pairing = y[0] * set.base[0] + (f.dim() == 2 ? y[1] * set.base[1] : 0.0);
    const double gap = (f[node] + fstar[k]) - pairing;
    if (gap <= eps) {
      set.slopes.push_back(y);
      set.dual_nodes.push_back(k);
    }
  }
  return set;
}

MaxFormulaResult max_formula_check(const GridFn& f, std::size_t node, std::array<long, 2> step, const Grid& dual_grid,
                                   std::optional<double> epsilon) {
  const Grid& g = f.grid();
  if (node >= g.size()) throw DimensionError("max_formula_check: node out of range");
  if (g.on_boundary(node)) throw DomainError("max_formula_check: node lies on the grid boundary");
  if (g.dim() == 1) step[1] = 0;
  if (step[0] == 0 && step[1] == 0) throw ParameterError("max_formula_check: zero direction");
  const auto [i, j] = g.unflat(node);
  const long ti = static_cast<long>(i) + step[0];
  const long tj = static_cast<long>(j) + step[1];
  if (ti < 0 || tj < 0 || ti >= static_cast<long>(g.count(0)) || tj >= static_cast<long>(g.count(1)))
    throw DomainError("max_formula_check: step leaves the grid");
  const std::size_t target = g.flat(static_cast<std::size_t>(ti), static_cast<std::size_t>(tj));
  const bool finite_hood = std::isfinite(f[node]) && std::isfinite(f[target]) && std::isfinite(f[node - g.count(1)]) &&
                           std::isfinite(f[node + g.count(1)]) &&
                           (g.dim() == 1 || (std::isfinite(f[node - 1]) && std::isfinite(f[node + 1])));
  if (!finite_hood) throw DomainError("max_formula_check: f is not finite around the node");

  const double dx = static_cast<double>(step[0]) * g.spacing(0);
  const double dy = g.dim() == 2 ? static_cast<double>(step[1]) * g.spacing(1) : 0.0;
  const double len = std::hypot(dx, dy);
  MaxFormulaResult r;
  r.difference_quotient = (f[target] - f[node]) / len;
  const SubdifferentialSet sd = subdifferential(f, node, dual_grid, epsilon);
  r.support_max = -kInf;
  for (const Point& y : sd.slopes) r.support_max = std::max(r.support_max, (y[0] * dx + y[1] * dy) / len);
  return r;
}

CoercivityReport coercivity_check(const GridFn& f, std::span<const double> levels) {
  f.require_proper("coercivity_check");
  const Grid& g = f.grid();
  const std::size_t m = f.argmin();
  const double fmin = f[m];
  const Point xm = g.node(m);
  double fmax = fmin;
  for (const double v : f.values())
    if (std::isfinite(v)) fmax = std::max(fmax, v);

  CoercivityReport rep;
  rep.growth_slope = kInf;
  rep.level_bound = kInf;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g.on_boundary(k) || !std::isfinite(f[k])) continue;
    rep.level_bound = std::min(rep.level_bound, f[k]);
    if (k == m) {
      rep.growth_slope = 0.0;
      continue;
    }
    const Point xb = g.node(k);
    const double dist = std::hypot(xb[0] - xm[0], xb[1] - xm[1]);
    rep.growth_slope = std::min(rep.growth_slope, (f[k] - fmin) / dist);
  }
  const double margin = 1e-12 * std::max(1.0, std::abs(fmin));
  rep.bounded_level_sets = rep.level_bound > fmin + margin;
  rep.coercive = rep.bounded_level_sets && rep.growth_slope > 0.0;

  std::vector<double> scan(levels.begin(), levels.end());
  if (scan.empty()) {
    const double range = std::max(fmax - fmin, 1.0);
    constexpr int kLevels = 16;
    for (int t = 1; t <= kLevels; ++t) scan.push_back(fmin + range * t / kLevels);
  }
  for (const double c : scan) rep.scan.push_back({c, rep.level_bound <= c});
  return rep;
}

LinearMap LinearMap::identity(std::size_t d) {
  if (d != 1 && d != 2) throw DimensionError("LinearMap::identity: dimension must be 1 or 2");
  return LinearMap{d, d, {1.0, 0.0, 0.0, 1.0}};
}

Point LinearMap::apply(const Point& x) const {
  Point out{0.0, 0.0};
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out[r] += m[r * cols + c] * x[c];
  return out;
}

Point LinearMap::apply_transpose(const Point& y) const {
  Point out{0.0, 0.0};
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) out[c] += m[r * cols + c] * y[r];
  return out;
}

DualityGap fenchel_duality_gap(const GridFn& f, const GridFn& g, const LinearMap& T, const Grid& dual_grid) {
  f.require_proper("fenchel_duality_gap");
  g.require_proper("fenchel_duality_gap");
  if (T.cols != f.dim() || T.rows != g.dim() || dual_grid.dim() != g.dim())
    throw DimensionError("fenchel_duality_gap: T must map f's dimension to g's, and the dual grid must match g");

  DualityGap out;
  double primal = kInf;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!std::isfinite(f[k])) continue;
    const Point tx = T.apply(f.grid().node(k));
    if (!g.grid().contains(tx)) out.truncation_warning = true;
    primal = std::min(primal, ext_add(f[k], g.interpolate(tx)));
  }

  double dual = -kInf;
  for (std::size_t k = 0; k < dual_grid.size(); ++k) {
    const Point y = dual_grid.node(k);
    const double fs = conjugate_at(f, T.apply_transpose(y));
    const double gs = conjugate_at(g, Point{-y[0], -y[1]});
    dual = std::max(dual, (-(ExtReal(fs) + ExtReal(gs))).value());
  }
  out.primal = primal;
  out.dual = dual;
  out.gap = ExtReal(primal) - ExtReal(dual);
  return out;
}

}  // namespace cca
