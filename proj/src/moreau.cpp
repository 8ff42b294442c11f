#include "cca/moreau.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cca/atom.hpp"
#include "cca/error.hpp"
#include "cca/fenchel.hpp"
#include "cca/simd/kernels.hpp"

namespace cca {

namespace {

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be a finite positive number");
}

void require_convex(const GridFn& f, double tol, const char* what) {
  f.require_proper(what);
  const ConvexityReport rep = discrete_convexity_check(f, tol);
  if (!rep.convex)
    throw NonConvexError(std::string(what) + ": function fails the discrete convexity check at node " +
                         std::to_string(rep.violation.value_or(0)));
}

std::vector<double> axis_nodes(const Grid& g, std::size_t d) {
  std::vector<double> xs(g.count(d));
  if (d < g.dim())
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = g.axis(d).node(i);
  return xs;
}

double sq_dist(const Point& a, const Point& b) {
  const double d0 = a[0] - b[0];
  const double d1 = a[1] - b[1];
  return d0 * d0 + d1 * d1;
}

}  // namespace

ProxOperator::ProxOperator(GridFn f, double lambda, double convexity_tol)
    : f_(std::move(f)), lambda_(lambda), nodes0_(axis_nodes(f_.grid(), 0)), nodes1_(axis_nodes(f_.grid(), 1)) {
  require_lambda(lambda_);
  require_convex(f_, convexity_tol, "prox");
}

ProxResult ProxOperator::operator()(const Point& x) const {
  const Grid& g = f_.grid();
  Point xq = x;
  if (g.dim() == 1) xq[1] = 0.0;
  if (!g.contains(xq)) throw DomainError("prox: query point lies outside the grid box");

  const simd::KernelTable& kern = simd::kernels();
  const double inv2l = 1.0 / (2.0 * lambda_);
  const std::size_t n0 = g.count(0);
  const std::size_t n1 = g.count(1);
  std::vector<double> q1(std::max(n0, n1));
  for (std::size_t j = 0; j < n1; ++j) {
    const double d = g.dim() == 2 ? xq[1] - nodes1_[j] : 0.0;
    q1[j] = d * d * inv2l;
  }
  double best = kInf;
  std::size_t best_node = 0;
  if (g.dim() == 1) {
    for (std::size_t i = 0; i < n0; ++i) {
      const double d = xq[0] - nodes0_[i];
      q1[i] = d * d * inv2l;
    }
    const simd::ArgResult r = kern.argmin_sum(f_.values().data(), q1.data(), n0);
    best = r.value;
    best_node = r.index;
  } else {
    for (std::size_t i = 0; i < n0; ++i) {
      const double d = xq[0] - nodes0_[i];
      const simd::ArgResult r = kern.argmin_sum(f_.values().data() + i * n1, q1.data(), n1);
      const double v = r.value + d * d * inv2l;
      if (v < best) {
        best = v;
        best_node = i * n1 + r.index;
      }
    }
  }

  ProxResult res;
  res.query = xq;
  res.lambda = lambda_;
  res.node = best_node;
  res.on_grid_boundary = g.on_boundary(best_node);
  res.point = g.node(best_node);
  res.envelope = best;

  // Parabolic refinement through the three samples along each axis; the
  // envelope is the value of the fitted model at its vertex. A parabola
  // through a kink of f would pull the point off it, so nodes where the
  // second difference of f jumps against both neighbours keep the node.
  const auto kink_at = [&](std::size_t k, std::size_t idx, std::size_t stride, std::size_t n) {
    const auto d2 = [&](std::size_t c) { return f_[c - stride] - 2.0 * f_[c] + f_[c + stride]; };
    const double mid = d2(k);
    double side = -kInf;
    if (idx >= 2) side = std::max(side, d2(k - stride));
    if (idx + 2 < n) side = std::max(side, d2(k + stride));
    if (!std::isfinite(mid) || side == -kInf) return !std::isfinite(mid);
    if (!std::isfinite(side)) return true;
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(f_[k]) + 1.0);
    return mid > 2.0 * side + noise;
  };
  const auto [bi, bj] = g.unflat(best_node);
  for (std::size_t d = 0; d < g.dim(); ++d) {
    const std::size_t idx = d == 0 ? bi : bj;
    if (idx == 0 || idx + 1 >= g.count(d)) continue;
    const std::size_t stride = d == 0 ? n1 : 1;
    const Point node_pt = g.node(best_node);
    const double fm = f_[best_node - stride] + sq_dist(xq, g.node(best_node - stride)) * inv2l;
    const double f0 = f_[best_node] + sq_dist(xq, node_pt) * inv2l;
    const double fp = f_[best_node + stride] + sq_dist(xq, g.node(best_node + stride)) * inv2l;
    if (!std::isfinite(fm) || !std::isfinite(fp)) continue;
    if (kink_at(best_node, idx, stride, g.count(d))) continue;
    const double curv = fm - 2.0 * f0 + fp;
    if (!(curv > 0.0)) continue;
    const double t = std::clamp(0.5 * (fm - fp) / curv, -1.0, 1.0);
    res.point[d] = node_pt[d] + t * g.spacing(d);
    res.envelope += 0.5 * t * (fp - fm) + 0.5 * t * t * curv;
  }

  Point slope{(xq[0] - res.point[0]) / lambda_, (xq[1] - res.point[1]) / lambda_};
  const double pairing = slope[0] * res.point[0] + slope[1] * res.point[1];
  const double gap = (f_.interpolate(res.point) + conjugate_at(f_, slope)) - pairing;
  res.certificate_eps = std::max(gap, 0.0);
  return res;
}

ProxResult prox(const GridFn& f, double lambda, const Point& x) { return ProxOperator(f, lambda)(x); }

GridFn moreau_envelope(const GridFn& f, double lambda) {
  require_lambda(lambda);
  require_convex(f, kConvexityTol, "moreau_envelope");
  const Grid& g = f.grid();
  const simd::KernelTable& kern = simd::kernels();
  const double inv2l = 1.0 / (2.0 * lambda);

  // Squared displacement tables; entry (n - 1 + t) holds (t h)^2 / (2 lambda).
  // They are even in t, so the entry for x_i - y_j is at (n - 1 - i + j).
  auto table = [&](std::size_t d) {
    const std::size_t n = g.count(d);
    std::vector<double> q(2 * n - 1, 0.0);
    if (d < g.dim()) {
      const double h = g.spacing(d);
      for (std::size_t s = 0; s < q.size(); ++s) {
        const double t = (static_cast<double>(s) - static_cast<double>(n - 1)) * h;
        q[s] = t * t * inv2l;
      }
    }
    return q;
  };
  const std::vector<double> q0 = table(0);
  const std::vector<double> q1 = table(1);
  const std::size_t n0 = g.count(0);
  const std::size_t n1 = g.count(1);

  std::vector<double> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto [i0, i1] = g.unflat(k);
    if (g.dim() == 1) {
      out[k] = kern.argmin_sum(f.values().data(), q0.data() + (n0 - 1 - i0), n0).value;
      continue;
    }
    double best = kInf;
    for (std::size_t j0 = 0; j0 < n0; ++j0) {
      const simd::ArgResult r = kern.argmin_sum(f.values().data() + j0 * n1, q1.data() + (n1 - 1 - i1), n1);
      best = std::min(best, r.value + q0[n0 - 1 - i0 + j0]);
    }
    out[k] = best;
  }
  return GridFn(g, std::move(out));
}

double moreau_decomposition_residual(const GridFn& f, const Point& x, const Grid& dual_grid) {
  const GridFn fstar = conjugate(f, dual_grid).dual;
  const ProxResult p = prox(f, 1.0, x);
  const ProxResult ps = prox(fstar, 1.0, x);
  if (ps.on_grid_boundary)
    throw GridTooSmallError("moreau_decomposition_residual: prox of the conjugate lies on the dual grid boundary");
  const double r0 = x[0] - p.point[0] - ps.point[0];
  const double r1 = f.dim() == 2 ? x[1] - p.point[1] - ps.point[1] : 0.0;
  return std::hypot(r0, r1);
}

Point project(const Box& box, const Point& x) {
  Point out{0.0, 0.0};
  for (std::size_t d = 0; d < box.dim; ++d) {
    if (!(box.lo[d] <= box.hi[d])) throw DomainError("project: empty box");
    out[d] = std::clamp(x[d], box.lo[d], box.hi[d]);
  }
  return out;
}

double distance_via_infconv_check(double a, double b, const Grid& grid) {
  if (grid.dim() != 1) throw DimensionError("distance_via_infconv_check: 1-D grids only");
  const GridFn norm = sample(FnAtom::make(AtomTag::kAbs), grid);
  const GridFn ind = sample(FnAtom::make(AtomTag::kIndicator, {a, b}), grid);
  const GridFn conv = inf_convolution(norm, ind).value;
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid.node(k)[0];
    const double direct = std::max({0.0, a - x, x - b});
    worst = std::max(worst, std::abs(conv[k] - direct));
  }
  return worst;
}

}  // namespace cca
