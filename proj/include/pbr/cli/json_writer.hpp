#pragma once

#include <nlohmann/json.hpp>
#include <string>

namespace pbr::cli {

/// Byte-stable JSON: keys sorted, floats as %.17g, LF line ends, trailing
/// newline when indented.  Non-finite floats become null.  indent < 0 gives
/// a single line.
std::string dump_json(const nlohmann::json& j, int indent = 2);

}  // namespace pbr::cli
