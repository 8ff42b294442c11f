#include "cca/ext_real.hpp"

#include <charconv>

namespace cca {

std::string ExtReal::to_string() const {
  if (is_plus_inf()) return "+inf";
  if (is_minus_inf()) return "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value_);
  return std::string(buf, res.ptr);
}

}  // namespace cca
