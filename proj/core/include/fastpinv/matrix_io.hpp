#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "fastpinv/matrix.hpp"

namespace fastpinv {

// Text format: a "rows cols" header line, then one line per row with the
// entries separated by single spaces. Values are written with 17 significant
// digits so a write/read cycle is lossless.
void write_matrix(std::ostream& out, const Matrix& a);
std::string format_matrix(const Matrix& a);

// Throws ParseError on malformed input.
Matrix read_matrix(std::istream& in);
Matrix parse_matrix(std::string_view text);

Matrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const Matrix& a);

// Shortest text with 17 significant digits, locale independent.
std::string format_double(double value, int significant_digits = 17);

}  // namespace fastpinv
