#pragma once

#include <json.hpp>

#include <string>

namespace dpv {

// Parses the TOML subset used by suite configs into a JSON document:
// tables, arrays of tables, bare/quoted/dotted keys, basic and literal
// strings, integers, floats, booleans, (multi-line) arrays, inline tables,
// and # comments.  Dates, multi-line strings and key redefinition are
// rejected.  Errors are std::runtime_error carrying a 1-based line number.
nlohmann::json parse_toml(const std::string& text);
nlohmann::json parse_toml_file(const std::string& path);

} // namespace dpv
