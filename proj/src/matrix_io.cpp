#include "gwp/matrix_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <vector>

namespace gwp {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double parse_real(std::string_view text) {
  const std::string t = trim(text);
  double x = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (!t.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, x);
  if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(x)) {
    throw ConfigError("expected a finite number, got '" + t + "'");
  }
  return x;
}

namespace {

std::string strip_brackets(const std::string& t) {
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw ConfigError("expected a bracketed list, got '" + t + "'");
  }
  return t.substr(1, t.size() - 2);
}

// Splits at commas that are not nested in brackets.
std::vector<std::string> split_top_level(const std::string& body) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string current;
  for (char ch : body) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (depth < 0) throw ConfigError("unbalanced brackets in '" + body + "'");
    if (ch == ',' && depth == 0) {
      parts.push_back(trim(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  if (depth != 0) throw ConfigError("unbalanced brackets in '" + body + "'");
  if (!trim(current).empty() || !parts.empty()) parts.push_back(trim(current));
  return parts;
}

}  // namespace

Vector parse_vector(std::string_view text) {
  const auto parts = split_top_level(strip_brackets(trim(text)));
  if (parts.empty()) throw ConfigError("empty vector");
  Vector v(static_cast<Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    v(static_cast<Index>(i)) = parse_real(parts[i]);
  }
  return v;
}

Matrix parse_matrix(std::string_view text) {
  const std::string t = trim(text);
  const auto rows = split_top_level(strip_brackets(t));
  if (rows.empty()) throw ConfigError("empty matrix");
  if (rows.front().empty() || rows.front().front() != '[') {
    // Flat row-major list of n² entries.
    const Vector flat = parse_vector(t);
    const auto n = static_cast<Index>(std::llround(std::sqrt(double(flat.size()))));
    if (n * n != flat.size()) {
      throw ConfigError("flat matrix needs a square number of entries, got " +
                        std::to_string(flat.size()));
    }
    Matrix m(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) m(i, j) = flat(i * n + j);
    return m;
  }
  std::vector<Vector> parsed;
  for (const auto& r : rows) parsed.push_back(parse_vector(r));
  const Index cols = parsed.front().size();
  Matrix m(static_cast<Index>(parsed.size()), cols);
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (parsed[i].size() != cols) throw ConfigError("ragged matrix rows in '" + t + "'");
    m.row(static_cast<Index>(i)) = parsed[i].transpose();
  }
  return m;
}

std::string format_real(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return std::string(buf.data(), ptr);
}

std::string format_vector(const Vector& v) {
  std::string out = "[";
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_real(v(i));
  }
  return out + "]";
}

std::string format_matrix(const Matrix& m) {
  std::string out = "[";
  for (Index i = 0; i < m.rows(); ++i) {
    if (i > 0) out += ", ";
    out += format_vector(m.row(i).transpose());
  }
  return out + "]";
}

}  // namespace gwp
