#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cca/grid_fn.hpp"
#include "cca/monotone.hpp"

namespace cca::io {

using Json = nlohmann::ordered_json;

/// {"dim", "axes": [{"lo", "hi", "n"}], "values": [...]}, infinities as "+inf"/"-inf".
Json to_json(const GridFn& f);
/// Inverse of to_json; throws FormatError on malformed input.
GridFn grid_fn_from_json(const Json& j);

/// {"dim", "pairs": [[[x...], [xstar...]], ...]}.
Json to_json(const OperatorGraph& g);
OperatorGraph graph_from_json(const Json& j);

/// Serializes with 17 significant digits for every floating-point number.
std::string dump(const Json& j, int indent = 2);

/// Columns x[,y],value with 9 significant digits and "inf"/"-inf".
std::string to_csv(const GridFn& f);

/// Writes through a temporary sibling file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// %.17g, or "+inf"/"-inf" as JSON strings for infinities.
Json number(double v);
/// Accepts a JSON number or one of the strings "+inf", "inf", "-inf".
double to_double(const Json& j);

}  // namespace cca::io
