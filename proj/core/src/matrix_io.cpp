#include "fastpinv/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

namespace fastpinv {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
T parse_number(std::string_view token, std::size_t line_no) {
  T value{};
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("matrix text, line " + std::to_string(line_no) + ": invalid number '" +
                     std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value, int significant_digits) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, significant_digits);
  (void)ec;
  return std::string(buf, ptr);
}

void write_matrix(std::ostream& out, const Matrix& a) {
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(r[j]);
    }
    out << '\n';
  }
}

std::string format_matrix(const Matrix& a) {
  std::ostringstream out;
  write_matrix(out, a);
  return out.str();
}

Matrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!split_ws(line).empty()) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError("matrix text: missing 'rows cols' header");
  const auto header = split_ws(line);
  if (header.size() != 2) {
    throw ParseError("matrix text, line " + std::to_string(line_no) +
                     ": header must be 'rows cols'");
  }
  const auto rows = parse_number<std::size_t>(header[0], line_no);
  const auto cols = parse_number<std::size_t>(header[1], line_no);
  if (rows == 0 || cols == 0) throw ParseError("matrix text: dimensions must be positive");

  std::vector<double> values;
  values.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!next_line()) {
      throw ParseError("matrix text: expected " + std::to_string(rows) + " rows, got " +
                       std::to_string(i));
    }
    const auto tokens = split_ws(line);
    if (tokens.size() != cols) {
      throw ParseError("matrix text, line " + std::to_string(line_no) + ": expected " +
                       std::to_string(cols) + " values, got " + std::to_string(tokens.size()));
    }
    for (auto t : tokens) values.push_back(parse_number<double>(t, line_no));
  }
  if (next_line()) {
    throw ParseError("matrix text, line " + std::to_string(line_no) + ": trailing data");
  }
  try {
    return Matrix(rows, cols, std::move(values));
  } catch (const NonFiniteError&) {
    throw ParseError("matrix text: non-finite value");
  }
}

Matrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_matrix(in);
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "' for reading");
  return read_matrix(in);
}

void save_matrix(const std::string& path, const Matrix& a) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  write_matrix(out, a);
  if (!out) throw ParseError("failed writing '" + path + "'");
}

}  // namespace fastpinv
