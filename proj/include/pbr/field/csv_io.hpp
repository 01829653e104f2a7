#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>

#include "pbr/field/domain.hpp"

namespace pbr::field {

/// Field CSV layout: optional leading "#" lines, header row "n,h,kind", one
/// metadata row with those values (rectangles append p0,q0,hq,margin), then
/// n rows of n values with row i holding f(p_i, q_j) for j = 0..n-1.
void write_field_csv(std::ostream& os, const Domain2& d, const Eigen::ArrayXXd& values);

struct FieldGrid {
  Domain2 domain;
  Eigen::ArrayXXd values;
};

/// Throws PreconditionError on malformed content.
FieldGrid read_field_csv(std::istream& is);
FieldGrid read_field_csv_file(const std::string& path);

/// printf("%.17g") formatting used by every artifact writer.
std::string format_double(double x);

}  // namespace pbr::field
