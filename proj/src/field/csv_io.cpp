#include "pbr/field/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "pbr/errors.hpp"

namespace pbr::field {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_field_csv(std::ostream& os, const Domain2& d, const Eigen::ArrayXXd& values) {
  os << "n,h,kind\n";
  os << d.n << "," << format_double(d.hp()) << "," << d.kind_name();
  if (!d.periodic()) {
    os << "," << format_double(d.p0) << "," << format_double(d.q0) << "," << format_double(d.hq()) << ","
       << d.margin;
  }
  os << "\n";
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < d.n; ++j) {
      if (j) os << ",";
      os << format_double(values(i, j));
    }
    os << "\n";
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw PreconditionError("field CSV: not a number: '" + s + "'");
  return v;
}

}  // namespace

FieldGrid read_field_csv(std::istream& is) {
  std::string line;
  // leading '#' lines carry provenance
  while (std::getline(is, line) && !line.empty() && line[0] == '#') {
  }
  if (line != "n,h,kind") throw PreconditionError("field CSV: header must be 'n,h,kind'");
  std::getline(is, line);
  const auto meta = split(line);
  if (meta.size() < 3) throw PreconditionError("field CSV: metadata row too short");
  const int n = static_cast<int>(to_double(meta[0]));
  const double h = to_double(meta[1]);
  FieldGrid g;
  if (meta[2] == "torus" && meta.size() == 3) {
    g.domain = Domain2::torus(n);
    if (std::abs(h - g.domain.hp()) > 1e-12 * h) throw PreconditionError("field CSV: torus spacing is not 2pi/n");
  } else if (meta[2] == "rectangle" && meta.size() == 7) {
    const double p0 = to_double(meta[3]), q0 = to_double(meta[4]), hq = to_double(meta[5]);
    g.domain = Domain2::rectangle(n, p0, p0 + h * (n - 1), q0, q0 + hq * (n - 1),
                                  static_cast<int>(to_double(meta[6])));
  } else {
    throw PreconditionError("field CSV: unknown domain kind '" + meta[2] + "'");
  }
  g.values.resize(n, n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(is, line)) throw PreconditionError("field CSV: expected " + std::to_string(n) + " rows");
    const auto cells = split(line);
    if (static_cast<int>(cells.size()) != n) throw PreconditionError("field CSV: row has wrong length");
    for (int j = 0; j < n; ++j) g.values(i, j) = to_double(cells[static_cast<std::size_t>(j)]);
  }
  return g;
}

FieldGrid read_field_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open field file " + path);
  return read_field_csv(in);
}

}  // namespace pbr::field
