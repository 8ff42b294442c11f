#include "cca/atom.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cca/error.hpp"

namespace cca {

namespace {

struct CatalogEntry {
  AtomTag tag;
  const char* name;
  std::size_t arity;
  std::size_t nparams;
  bool convex;
};

constexpr std::array kCatalog = {
    CatalogEntry{AtomTag::kAbs, "abs", 1, 0, true},
    CatalogEntry{AtomTag::kPower, "power", 1, 1, true},
    CatalogEntry{AtomTag::kExp, "exp", 1, 0, true},
    CatalogEntry{AtomTag::kNegEntropy, "negentropy", 1, 0, true},
    CatalogEntry{AtomTag::kExpExp, "expexp", 1, 0, true},
    CatalogEntry{AtomTag::kExpExpConj, "expexp_conj", 1, 0, true},
    CatalogEntry{AtomTag::kIndicator, "indicator", 1, 2, true},
    CatalogEntry{AtomTag::kSupport, "support", 1, 2, true},
    CatalogEntry{AtomTag::kDistance, "distance", 1, 2, true},
    CatalogEntry{AtomTag::kSupportClipped, "support_clipped", 1, 2, true},
    CatalogEntry{AtomTag::kNegSqrtCircle, "negsqrt_circle", 1, 0, true},
    CatalogEntry{AtomTag::kSqrtOnePlusSq, "sqrt_one_plus_sq", 1, 0, true},
    CatalogEntry{AtomTag::kNegSqrt, "negsqrt", 1, 0, true},
    CatalogEntry{AtomTag::kNegSqrtConj, "negsqrt_conj", 1, 0, true},
    CatalogEntry{AtomTag::kConstant, "constant", 1, 1, true},
    CatalogEntry{AtomTag::kCube, "cube", 1, 0, false},
    CatalogEntry{AtomTag::kNegAbs, "neg_abs", 1, 0, false},
    CatalogEntry{AtomTag::kDoubleWell, "double_well", 1, 1, false},
    CatalogEntry{AtomTag::kNorm, "norm", 2, 1, true},
    CatalogEntry{AtomTag::kBallIndicator, "ball_indicator", 2, 1, true},
    CatalogEntry{AtomTag::kNormHalfSq, "norm_half_sq", 2, 1, true},
};

const CatalogEntry& entry(AtomTag tag) {
  for (const auto& e : kCatalog)
    if (e.tag == tag) return e;
  throw CatalogError("unknown atom tag");
}

std::string catalog_listing() {
  std::string s;
  for (const auto& e : kCatalog) {
    if (!s.empty()) s += ", ";
    s += e.name;
  }
  return s;
}

// Hoelder conjugate exponent: 1 <-> inf, otherwise p / (p - 1).
double dual_exponent(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double lp_norm(double x, double y, double p) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (p == 1.0) return ax + ay;
  if (p == 2.0) return std::hypot(ax, ay);
  if (std::isinf(p)) return std::max(ax, ay);
  const double m = std::max(ax, ay);
  if (m == 0.0) return 0.0;
  return m * std::pow(std::pow(ax / m, p) + std::pow(ay / m, p), 1.0 / p);
}

}  // namespace

FnAtom FnAtom::make(const std::string& name, std::vector<double> params) {
  for (const auto& e : kCatalog)
    if (name == e.name) return make(e.tag, std::move(params));
  throw CatalogError("unknown atom '" + name + "'; catalog: " + catalog_listing());
}

FnAtom FnAtom::make(AtomTag tag, std::vector<double> params) {
  FnAtom atom(tag, std::move(params));
  atom.validate();
  return atom;
}

const std::string& FnAtom::name() const {
  static const std::vector<std::string>& names = catalog_names();
  for (std::size_t i = 0; i < kCatalog.size(); ++i)
    if (kCatalog[i].tag == tag_) return names[i];
  throw CatalogError("unknown atom tag");
}

std::size_t FnAtom::arity() const { return entry(tag_).arity; }

bool FnAtom::is_convex() const { return entry(tag_).convex; }

void FnAtom::validate() const {
  const CatalogEntry& e = entry(tag_);
  if (params_.size() != e.nparams)
    throw ParameterError(std::string("atom '") + e.name + "' takes " + std::to_string(e.nparams) + " parameter(s), got " +
                         std::to_string(params_.size()));
  for (const double v : params_)
    if (std::isnan(v)) throw ParameterError(std::string("atom '") + e.name + "': NaN parameter");
  switch (tag_) {
    case AtomTag::kPower:
      if (!(params_[0] > 1.0) || std::isinf(params_[0]))
        throw ParameterError("power atom needs a finite exponent p > 1");
      break;
    case AtomTag::kIndicator:
    case AtomTag::kSupport:
    case AtomTag::kDistance:
    case AtomTag::kSupportClipped:
      if (!(params_[0] <= params_[1]) || !std::isfinite(params_[0]) || !std::isfinite(params_[1]))
        throw ParameterError(std::string("atom '") + e.name + "' needs finite endpoints a <= b");
      break;
    case AtomTag::kConstant:
      if (!std::isfinite(params_[0])) throw ParameterError("constant atom needs a finite value");
      break;
    case AtomTag::kDoubleWell:
      if (!(params_[0] >= 0.0) || std::isinf(params_[0])) throw ParameterError("double_well needs a finite s >= 0");
      break;
    case AtomTag::kNorm:
    case AtomTag::kBallIndicator:
    case AtomTag::kNormHalfSq:
      if (!(params_[0] >= 1.0)) throw ParameterError(std::string("atom '") + e.name + "' needs p >= 1 (inf allowed)");
      break;
    default:
      break;
  }
}

double FnAtom::eval(std::span<const double> x) const {
  if (x.size() != arity())
    throw DimensionError("atom '" + name() + "' has arity " + std::to_string(arity()) + ", got a point of dimension " +
                         std::to_string(x.size()));
  const double t = x[0];
  switch (tag_) {
    case AtomTag::kAbs:
      return std::abs(t);
    case AtomTag::kPower: {
      const double p = params_[0];
      return std::pow(std::abs(t), p) / p;
    }
    case AtomTag::kExp:
      return std::exp(t);
    case AtomTag::kNegEntropy:
      if (t < 0.0) return kInf;
      if (t == 0.0) return 0.0;
      return t * std::log(t) - t;
    case AtomTag::kExpExp:
      return std::exp(std::exp(t));
    case AtomTag::kExpExpConj: {
      if (t < 0.0) return kInf;
      if (t == 0.0) return -1.0;
      const double w = lambert_w(t);
      return t * (std::log(t) - w - 1.0 / w);
    }
    case AtomTag::kIndicator:
      return (t >= params_[0] && t <= params_[1]) ? 0.0 : kInf;
    case AtomTag::kSupport:
      return std::max(params_[0] * t, params_[1] * t);
    case AtomTag::kDistance:
      return std::max({0.0, params_[0] - t, t - params_[1]});
    case AtomTag::kSupportClipped:
      if (std::abs(t) > 1.0) return kInf;
      return std::max(params_[0] * t, params_[1] * t);
    case AtomTag::kNegSqrtCircle:
      if (std::abs(t) > 1.0) return kInf;
      return -std::sqrt((1.0 - t) * (1.0 + t));
    case AtomTag::kSqrtOnePlusSq:
      return std::hypot(1.0, t);
    case AtomTag::kNegSqrt:
      if (t < 0.0) return kInf;
      return -std::sqrt(t);
    case AtomTag::kNegSqrtConj:
      if (t >= 0.0) return kInf;
      return -1.0 / (4.0 * t);
    case AtomTag::kConstant:
      return params_[0];
    case AtomTag::kCube:
      return t * t * t;
    case AtomTag::kNegAbs:
      return -std::abs(t);
    case AtomTag::kDoubleWell:
      return std::min(std::abs(t - params_[0]), std::abs(t + params_[0]));
    case AtomTag::kNorm:
      return lp_norm(x[0], x[1], params_[0]);
    case AtomTag::kBallIndicator:
      return lp_norm(x[0], x[1], params_[0]) <= 1.0 ? 0.0 : kInf;
    case AtomTag::kNormHalfSq: {
      const double n = lp_norm(x[0], x[1], params_[0]);
      return 0.5 * n * n;
    }
  }
  throw CatalogError("unknown atom tag");
}

double FnAtom::eval(double x) const { return eval(std::span<const double>(&x, 1)); }

double FnAtom::eval(const Point& x) const { return eval(std::span<const double>(x.data(), arity() == 2 ? 2 : 1)); }

std::optional<FnAtom> FnAtom::conjugate() const {
  switch (tag_) {
    case AtomTag::kAbs:
      return make(AtomTag::kIndicator, {-1.0, 1.0});
    case AtomTag::kPower:
      return make(AtomTag::kPower, {dual_exponent(params_[0])});
    case AtomTag::kExp:
      return make(AtomTag::kNegEntropy);
    case AtomTag::kNegEntropy:
      return make(AtomTag::kExp);
    case AtomTag::kExpExp:
      return make(AtomTag::kExpExpConj);
    case AtomTag::kExpExpConj:
      return make(AtomTag::kExpExp);
    case AtomTag::kIndicator:
      return make(AtomTag::kSupport, params_);
    case AtomTag::kSupport:
      return make(AtomTag::kIndicator, params_);
    case AtomTag::kDistance:
      return make(AtomTag::kSupportClipped, params_);
    case AtomTag::kSupportClipped:
      return make(AtomTag::kDistance, params_);
    case AtomTag::kNegSqrtCircle:
      return make(AtomTag::kSqrtOnePlusSq);
    case AtomTag::kSqrtOnePlusSq:
      return make(AtomTag::kNegSqrtCircle);
    case AtomTag::kNegSqrt:
      return make(AtomTag::kNegSqrtConj);
    case AtomTag::kNegSqrtConj:
      return make(AtomTag::kNegSqrt);
    case AtomTag::kNorm:
      return make(AtomTag::kBallIndicator, {dual_exponent(params_[0])});
    case AtomTag::kBallIndicator:
      return make(AtomTag::kNorm, {dual_exponent(params_[0])});
    case AtomTag::kNormHalfSq:
      return make(AtomTag::kNormHalfSq, {dual_exponent(params_[0])});
    default:
      return std::nullopt;
  }
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kCatalog) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

GridFn sample(const FnAtom& atom, const Grid& grid) {
  if (atom.arity() != grid.dim())
    throw DimensionError("atom '" + atom.name() + "' has arity " + std::to_string(atom.arity()) + " but the grid is " +
                         std::to_string(grid.dim()) + "-D");
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = atom.eval(grid.node(k));
  return GridFn(grid, std::move(values));
}

double lambert_w(double y) {
  if (!(y >= 0.0)) throw DomainError("lambert_w: argument must be >= 0");
  if (y == 0.0) return 0.0;
  if (std::isinf(y)) return kInf;
  double w = std::log1p(y);
  if (y > 3.0) w -= std::log(w);
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double step = (w * ew - y) / (ew * (w + 1.0));
    w -= step;
    if (std::abs(step) <= 1e-15 * std::abs(w)) return w;
  }
  if (std::abs(w * std::exp(w) - y) <= 1e-12 * y) return w;
  throw AccuracyError("lambert_w: Newton iteration did not converge");
}

}  // namespace cca
