#include "cca/monotone.hpp"

#include <algorithm>
#include <cmath>

#include "cca/error.hpp"
#include "cca/moreau.hpp"

namespace cca {

OperatorGraph::OperatorGraph(std::size_t dim, const std::vector<GraphPair>& pairs) : dim_(dim) {
  if (dim != 1 && dim != 2) throw ParameterError("operator graph dimension must be 1 or 2");
  if (pairs.empty()) throw ParameterError("operator graph must be nonempty");
  double xmax = 0.0;
  double xsmax = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) {
    a_[d].reserve(pairs.size());
    as_[d].reserve(pairs.size());
  }
  pairing_.reserve(pairs.size());
  for (const GraphPair& p : pairs) {
    double pair_sum = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) {
      if (!std::isfinite(p.x[d]) || !std::isfinite(p.xs[d])) throw ParameterError("operator graph entries must be finite");
      a_[d].push_back(p.x[d]);
      as_[d].push_back(p.xs[d]);
      pair_sum += p.x[d] * p.xs[d];
      xmax = std::max(xmax, std::abs(p.x[d]));
      xsmax = std::max(xsmax, std::abs(p.xs[d]));
    }
    pairing_.push_back(pair_sum);
  }
  scale_ = xmax * xsmax;
}

GraphPair OperatorGraph::pair(std::size_t i) const {
  GraphPair p;
  for (std::size_t d = 0; d < dim_; ++d) {
    p.x[d] = a_[d][i];
    p.xs[d] = as_[d][i];
  }
  return p;
}

simd::GraphColumns OperatorGraph::columns() const {
  simd::GraphColumns c;
  c.dim = dim_;
  for (std::size_t d = 0; d < dim_; ++d) {
    c.a[d] = a_[d].data();
    c.as[d] = as_[d].data();
  }
  c.pairing = pairing_.data();
  c.size = size();
  return c;
}

OperatorGraph difference_graph(const GridFn& f) {
  if (f.dim() != 1) throw DimensionError("difference_graph: 1-D functions only");
  const Grid& g = f.grid();
  const double h = g.spacing(0);
  std::vector<GraphPair> pairs;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    if (!std::isfinite(f[i - 1]) || !std::isfinite(f[i + 1])) continue;
    pairs.push_back({{g.node(i)[0], 0.0}, {(f[i + 1] - f[i - 1]) / (2.0 * h), 0.0}});
  }
  return OperatorGraph(1, pairs);
}

namespace {

double product(const GraphPair& p, const simd::GraphColumns& c, std::size_t j) {
  double v = (p.x[0] - c.a[0][j]) * (p.xs[0] - c.as[0][j]);
  if (c.dim == 2) v = v + (p.x[1] - c.a[1][j]) * (p.xs[1] - c.as[1][j]);
  return v;
}

}  // namespace

MonotonicityReport is_monotone(const OperatorGraph& g, std::optional<double> tol) {
  const double t = tol.value_or(g.default_tol());
  const simd::GraphColumns c = g.columns();
  const simd::KernelTable& kern = simd::kernels();
  MonotonicityReport rep;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const GraphPair p = g.pair(i);
    const simd::ArgResult r = kern.argmin_monotone(c, p.x.data(), p.xs.data(), i + 1);
    rep.min_product = std::min(rep.min_product, r.value);
    if (r.value < -t) {
      for (std::size_t j = i + 1; j < g.size(); ++j)
        if (product(p, c, j) < -t) {
          rep.monotone = false;
          rep.violation = std::make_pair(i, j);
          return rep;
        }
    }
  }
  return rep;
}

bool monotonically_related(const OperatorGraph& g, const GraphPair& candidate, std::optional<double> tol) {
  const double t = tol.value_or(g.default_tol());
  const simd::ArgResult r = simd::kernels().argmin_monotone(g.columns(), candidate.x.data(), candidate.xs.data(), 0);
  return r.value >= -t;
}

FitzpatrickEval fitzpatrick(const OperatorGraph& g, const GraphPair& query) {
  const simd::ArgResult r = simd::kernels().argmax_fitzpatrick(g.columns(), query.x.data(), query.xs.data(), 0);
  return {query, r.value, r.index};
}

namespace {

ResolventResult resolve(const ProxOperator& prox_op, const Point& z) {
  const ProxResult p = prox_op(z);
  const double lambda = prox_op.lambda();
  ResolventResult r;
  r.x = p.point;
  r.y = {(p.query[0] - p.point[0]) / lambda, (p.query[1] - p.point[1]) / lambda};
  r.lambda = lambda;
  r.certificate_eps = p.certificate_eps;
  r.on_grid_boundary = p.on_grid_boundary;
  return r;
}

}  // namespace

ResolventResult resolvent(const GridFn& f, double lambda, const Point& z) { return resolve(ProxOperator(f, lambda), z); }

Point yosida(const GridFn& f, double lambda, const Point& z) { return resolvent(f, lambda, z).y; }

SurjectivityReport surjectivity_probe(const GridFn& f, std::span<const Point> targets, double lambda) {
  const ProxOperator prox_op(f, lambda);
  SurjectivityReport rep;
  for (const Point& z : targets) {
    const ResolventResult r = resolve(prox_op, z);
    SurjectivityEntry e;
    e.target = z;
    if (f.dim() == 1) e.target[1] = 0.0;
    e.x = r.x;
    e.y = r.y;
    e.residual = std::hypot(e.target[0] - (r.x[0] + lambda * r.y[0]), e.target[1] - (r.x[1] + lambda * r.y[1]));
    e.certificate_eps = r.certificate_eps;
    e.widen_grid = r.on_grid_boundary;
    if (!e.widen_grid) ++rep.solved;
    rep.max_residual = std::max(rep.max_residual, e.residual);
    rep.max_certificate_eps = std::max(rep.max_certificate_eps, e.certificate_eps);
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace cca
