#include "pbr/cli/json_writer.hpp"

#include <cmath>

#include "pbr/field/csv_io.hpp"

namespace pbr::cli {

namespace {

void write(std::string& out, const nlohmann::json& j, int indent, int depth) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {  // std::map order: sorted
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += nlohmann::json(k).dump(-1, ' ', false);
        out += pretty ? ": " : ":";
        write(out, v, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write(out, v, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? field::format_double(x) : "null";
      return;
    }
    default:
      out += j.dump(-1, ' ', false);
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  if (indent >= 0) out += '\n';
  return out;
}

}  // namespace pbr::cli
