#include "cca/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "cca/error.hpp"

namespace cca {

double Axis::node(std::size_t i) const {
  if (i + 1 == count) return hi;
  return lo + static_cast<double>(i) * spacing();
}

std::size_t Axis::nearest(double x) const {
  const double t = std::round((x - lo) / spacing());
  if (!(t > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(t), count - 1);
}

Grid::Grid(Axis a, std::size_t node_cap) : dim_(1), axes_{a, Axis{}} { validate(node_cap); }

Grid::Grid(Axis a, Axis b, std::size_t node_cap) : dim_(2), axes_{a, b} { validate(node_cap); }

void Grid::validate(std::size_t node_cap) const {
  std::size_t total = 1;
  for (std::size_t d = 0; d < dim_; ++d) {
    const Axis& ax = axes_[d];
    if (ax.count < 2) throw ParameterError("grid axis needs at least 2 nodes");
    if (!std::isfinite(ax.lo) || !std::isfinite(ax.hi) || !(ax.hi > ax.lo))
      throw ParameterError("grid axis needs finite bounds with lo < hi");
    if (ax.count > node_cap / total) throw SizeError("grid exceeds the node cap");
    total *= ax.count;
  }
}

double Grid::max_spacing() const {
  double h = spacing(0);
  if (dim_ == 2) h = std::max(h, spacing(1));
  return h;
}

Point Grid::node(std::size_t k) const {
  const auto [i, j] = unflat(k);
  Point p{axes_[0].node(i), 0.0};
  if (dim_ == 2) p[1] = axes_[1].node(j);
  return p;
}

bool Grid::contains(const Point& x) const {
  for (std::size_t d = 0; d < dim_; ++d)
    if (x[d] < axes_[d].lo || x[d] > axes_[d].hi) return false;
  return true;
}

bool Grid::on_boundary(std::size_t k) const {
  const auto [i, j] = unflat(k);
  if (i == 0 || i + 1 == count(0)) return true;
  return dim_ == 2 && (j == 0 || j + 1 == count(1));
}

std::size_t Grid::nearest(const Point& x) const {
  const std::size_t i = axes_[0].nearest(x[0]);
  const std::size_t j = dim_ == 2 ? axes_[1].nearest(x[1]) : 0;
  return flat(i, j);
}

std::optional<long> Grid::origin_offset(std::size_t d) const {
  const double t = -axes_[d].lo / axes_[d].spacing();
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-9 * std::max(1.0, std::abs(t))) return std::nullopt;
  return static_cast<long>(r);
}

bool Grid::is_symmetric() const {
  for (std::size_t d = 0; d < dim_; ++d) {
    const Axis& ax = axes_[d];
    if (ax.count % 2 == 0 || ax.lo != -ax.hi) return false;
  }
  return true;
}

namespace {

double parse_double(std::string_view s, const std::string& whole) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParameterError("malformed grid '" + whole + "': bad number '" + std::string(s) + "'");
  return v;
}

Axis parse_axis(std::string_view s, const std::string& whole) {
  const auto c1 = s.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : s.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw ParameterError("malformed grid '" + whole + "': expected lo:hi:count");
  const double lo = parse_double(s.substr(0, c1), whole);
  const double hi = parse_double(s.substr(c1 + 1, c2 - c1 - 1), whole);
  const std::string_view cs = s.substr(c2 + 1);
  std::size_t n = 0;
  const auto res = std::from_chars(cs.data(), cs.data() + cs.size(), n);
  if (res.ec != std::errc() || res.ptr != cs.data() + cs.size())
    throw ParameterError("malformed grid '" + whole + "': bad count '" + std::string(cs) + "'");
  return Axis{lo, hi, n};
}

}  // namespace

Grid Grid::parse(const std::string& text, std::size_t node_cap) {
  // 'x' separates axes; numbers never contain it, so the first 'x' is the split.
  const auto sep = text.find('x');
  if (sep == std::string::npos) return Grid(parse_axis(text, text), node_cap);
  return Grid(parse_axis(std::string_view(text).substr(0, sep), text),
              parse_axis(std::string_view(text).substr(sep + 1), text), node_cap);
}

std::string Grid::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t d = 0; d < dim_; ++d) {
    if (d) os << 'x';
    os << axes_[d].lo << ':' << axes_[d].hi << ':' << axes_[d].count;
  }
  return os.str();
}

}  // namespace cca
