#include "cca/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "cca/error.hpp"

namespace cca::io {

namespace {

std::string format(const char* fmt, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void emit(const Json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) {
        out += format("%.17g", v);
      } else {
        out += v > 0 ? "\"+inf\"" : "\"-inf\"";
      }
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const Json& e : j)
        if (e.is_structured()) flat = false;
      out += '[';
      bool first = true;
      for (const Json& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        emit(e, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        emit(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    default:
      out += j.dump();
  }
}

Axis axis_from_json(const Json& a) {
  if (!a.is_object() || !a.contains("lo") || !a.contains("hi") || !a.contains("n"))
    throw FormatError("axis entries need lo, hi and n");
  const Json& n = a.at("n");
  if (!n.is_number_integer() || n.get<long long>() < 2) throw FormatError("axis n must be an integer >= 2");
  return Axis{to_double(a.at("lo")), to_double(a.at("hi")), n.get<std::size_t>()};
}

Point point_from_json(const Json& v, std::size_t dim) {
  if (!v.is_array() || v.size() != dim) throw FormatError("graph coordinates must have length dim");
  Point p{};
  for (std::size_t d = 0; d < dim; ++d) p[d] = to_double(v[d]);
  return p;
}

}  // namespace

Json number(double v) { return Json(v); }

double to_double(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s == "+inf" || s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw FormatError("expected a number or an infinity sentinel, got " + j.dump());
}

Json to_json(const GridFn& f) {
  const Grid& g = f.grid();
  Json axes = Json::array();
  for (std::size_t d = 0; d < g.dim(); ++d)
    axes.push_back(Json{{"lo", g.axis(d).lo}, {"hi", g.axis(d).hi}, {"n", g.axis(d).count}});
  Json values = Json::array();
  for (double v : f.values()) values.push_back(v);
  return Json{{"dim", g.dim()}, {"axes", std::move(axes)}, {"values", std::move(values)}};
}

GridFn grid_fn_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw FormatError("grid function must be a JSON object");
    const std::size_t dim = j.at("dim").get<std::size_t>();
    const Json& axes = j.at("axes");
    if ((dim != 1 && dim != 2) || !axes.is_array() || axes.size() != dim)
      throw FormatError("grid function needs dim in {1, 2} and one axis per dimension");
    const Grid grid = dim == 1 ? Grid(axis_from_json(axes[0])) : Grid(axis_from_json(axes[0]), axis_from_json(axes[1]));
    const Json& vals = j.at("values");
    if (!vals.is_array() || vals.size() != grid.size()) throw FormatError("values length does not match the grid");
    std::vector<double> v;
    v.reserve(vals.size());
    for (const Json& e : vals) v.push_back(to_double(e));
    return GridFn(grid, std::move(v));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed grid function: ") + e.what());
  }
}

Json to_json(const OperatorGraph& g) {
  Json pairs = Json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const GraphPair p = g.pair(i);
    Json x = Json::array();
    Json xs = Json::array();
    for (std::size_t d = 0; d < g.dim(); ++d) {
      x.push_back(p.x[d]);
      xs.push_back(p.xs[d]);
    }
    pairs.push_back(Json::array({std::move(x), std::move(xs)}));
  }
  return Json{{"dim", g.dim()}, {"pairs", std::move(pairs)}};
}

OperatorGraph graph_from_json(const Json& j) {
  try {
    const std::size_t dim = j.at("dim").get<std::size_t>();
    if (dim != 1 && dim != 2) throw FormatError("graph dim must be 1 or 2");
    std::vector<GraphPair> pairs;
    for (const Json& p : j.at("pairs")) {
      if (!p.is_array() || p.size() != 2) throw FormatError("each graph pair is [[x...], [xstar...]]");
      pairs.push_back({point_from_json(p[0], dim), point_from_json(p[1], dim)});
    }
    return OperatorGraph(dim, pairs);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed operator graph: ") + e.what());
  }
}

std::string dump(const Json& j, int indent) {
  std::string out;
  emit(j, indent, 0, out);
  out += '\n';
  return out;
}

std::string to_csv(const GridFn& f) {
  const Grid& g = f.grid();
  std::string out = g.dim() == 1 ? "x,value\n" : "x,y,value\n";
  const auto cell = [](double v) {
    if (std::isinf(v)) return std::string(v > 0 ? "inf" : "-inf");
    return format("%.9g", v);
  };
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Point x = g.node(k);
    out += cell(x[0]);
    if (g.dim() == 2) out += ',' + cell(x[1]);
    out += ',' + cell(f[k]) + '\n';
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) throw Error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace cca::io
