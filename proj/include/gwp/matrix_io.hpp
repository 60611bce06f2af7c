#pragma once

// Decimal text (de)serialization for reals, vectors and matrices.
//
//   vector:  [1, 0.5]
//   matrix:  [[1, 0.5], [0.5, 1]]   or the flat row-major form [1, 0.5, 0.5, 1]
//
// Matrix dimensions are inferred from element counts. Reals are written
// with 17 significant digits so that parse(format(x)) == x.

#include <string>
#include <string_view>

#include "gwp/linalg.hpp"

namespace gwp {

std::string trim(std::string_view s);

/// Throws ConfigError on malformed input.
double parse_real(std::string_view text);
Vector parse_vector(std::string_view text);
Matrix parse_matrix(std::string_view text);

std::string format_real(double x);
std::string format_vector(const Vector& v);
std::string format_matrix(const Matrix& m);

}  // namespace gwp
