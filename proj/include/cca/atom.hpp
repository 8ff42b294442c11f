#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cca/grid.hpp"
#include "cca/grid_fn.hpp"

namespace cca {

enum class AtomTag {
  kAbs,             // |x|
  kPower,           // |x|^p / p, p > 1
  kExp,             // e^x
  kNegEntropy,      // x log x - x on [0, inf)
  kExpExp,          // exp(exp(x))
  kExpExpConj,      // y (log y - W(y) - 1/W(y)) on [0, inf)
  kIndicator,       // 0 on [a, b], +inf elsewhere
  kSupport,         // max(a y, b y)
  kDistance,        // distance to [a, b]
  kSupportClipped,  // max(a y, b y) on [-1, 1], +inf elsewhere
  kNegSqrtCircle,   // -sqrt(1 - x^2) on [-1, 1]
  kSqrtOnePlusSq,   // sqrt(1 + x^2)
  kNegSqrt,         // -sqrt(x) on [0, inf)
  kNegSqrtConj,     // -1 / (4 y) on (-inf, 0)
  kConstant,        // c
  kCube,            // x^3 (not convex)
  kNegAbs,          // -|x| (not convex)
  kDoubleWell,      // min(|x - s|, |x + s|) (not convex)
  kNorm,            // ||x||_p on R^2, p in {1, 2, inf}
  kBallIndicator,   // indicator of the unit ||.||_q ball on R^2
  kNormHalfSq,      // ||x||_p^2 / 2 on R^2
};

/// Closed-form catalog function with an optional analytic conjugate.
class FnAtom {
 public:
  /// Builds an atom by catalog name; throws CatalogError for unknown names
  /// and ParameterError for inadmissible parameters.
  static FnAtom make(const std::string& name, std::vector<double> params = {});
  static FnAtom make(AtomTag tag, std::vector<double> params = {});

  [[nodiscard]] AtomTag tag() const { return tag_; }
  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] std::span<const double> params() const { return params_; }
  [[nodiscard]] std::size_t arity() const;
  /// Convex on its whole domain.
  [[nodiscard]] bool is_convex() const;

  /// Value at x; +inf outside the atom's domain. Throws DimensionError when
  /// `x.size()` differs from the arity.
  [[nodiscard]] double eval(std::span<const double> x) const;
  [[nodiscard]] double eval(double x) const;
  [[nodiscard]] double eval(const Point& x) const;

  /// The catalog entry holding the analytic Fenchel conjugate, when known.
  [[nodiscard]] std::optional<FnAtom> conjugate() const;

 private:
  FnAtom(AtomTag tag, std::vector<double> params) : tag_(tag), params_(std::move(params)) {}
  void validate() const;

  AtomTag tag_;
  std::vector<double> params_;
};

/// All catalog names, in declaration order.
const std::vector<std::string>& catalog_names();

/// Samples `atom` at every node of `grid`.
GridFn sample(const FnAtom& atom, const Grid& grid);

/// Principal branch of the Lambert W function on [0, inf), by Newton
/// iteration to relative accuracy 1e-12 or better.
double lambert_w(double y);

}  // namespace cca
