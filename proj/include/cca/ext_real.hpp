#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>

namespace cca {

/// Extended real number in [-inf, +inf].
///
/// Stored as a double whose IEEE infinities stand for +inf/-inf. NaN is never
/// produced: the indeterminate sum (+inf) + (-inf) is +inf, and so is
/// (+inf) - (+inf). This is the convention used for functions with values in
/// ]-inf, +inf], where +inf marks points outside the domain.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtReal plus_inf() { return ExtReal(std::numeric_limits<double>::infinity()); }
  static constexpr ExtReal minus_inf() { return ExtReal(-std::numeric_limits<double>::infinity()); }

  [[nodiscard]] constexpr double value() const { return value_; }
  [[nodiscard]] bool is_finite() const { return std::isfinite(value_); }
  [[nodiscard]] bool is_plus_inf() const { return value_ == std::numeric_limits<double>::infinity(); }
  [[nodiscard]] bool is_minus_inf() const { return value_ == -std::numeric_limits<double>::infinity(); }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.is_plus_inf() || b.is_plus_inf()) return plus_inf();
    return ExtReal(a.value_ + b.value_);
  }
  friend ExtReal operator-(ExtReal a) { return ExtReal(-a.value_); }
  friend ExtReal operator-(ExtReal a, ExtReal b) { return a + (-b); }

  /// Multiplication by a finite scalar s > 0; 0 * (+inf) is taken as 0 for s = 0.
  [[nodiscard]] ExtReal scaled(double s) const {
    if (s == 0.0) return ExtReal(0.0);
    return ExtReal(s * value_);
  }

  ExtReal& operator+=(ExtReal o) { return *this = *this + o; }
  ExtReal& operator-=(ExtReal o) { return *this = *this - o; }

  friend constexpr bool operator==(ExtReal a, ExtReal b) { return a.value_ == b.value_; }
  friend constexpr auto operator<=>(ExtReal a, ExtReal b) { return a.value_ <=> b.value_; }

  /// "+inf", "-inf", or the shortest round-trip decimal of the finite value.
  [[nodiscard]] std::string to_string() const;

 private:
  double value_ = 0.0;
};

/// Sum of plain doubles under the extended-real convention.
inline double ext_add(double a, double b) { return (ExtReal(a) + ExtReal(b)).value(); }

}  // namespace cca
