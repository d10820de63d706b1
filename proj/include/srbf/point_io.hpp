#pragma once

// Plain-text point files: one point per line, whitespace-separated decimal
// coordinates, '#' starts a comment line. The dimension comes from the first
// data line.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "srbf/errors.hpp"
#include "srbf/geometry.hpp"

namespace srbf::io {

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view token, const std::string& where) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw InputError(where + ": invalid number '" + std::string(token) + "'");
  }
  return v;
}

/// Numeric rows of a whitespace-separated text stream, with line numbers.
struct NumericRow {
  std::size_t line;
  std::vector<double> values;
};

inline std::vector<NumericRow> read_rows(std::istream& in, const std::string& source) {
  std::vector<NumericRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::string tok;
    NumericRow row{lineno, {}};
    const std::string where = source + ":" + std::to_string(lineno);
    while (ss >> tok) row.values.push_back(parse_double(tok, where));
    if (!rows.empty() && row.values.size() != rows.front().values.size()) {
      throw InputError(where + ": expected " + std::to_string(rows.front().values.size()) +
                       " columns, found " + std::to_string(row.values.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(source + ": no points found");
  return rows;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

inline std::vector<Point> read_points(std::istream& in, const std::string& source = "<stream>") {
  std::vector<Point> pts;
  for (auto& row : read_rows(in, source)) pts.emplace_back(std::move(row.values));
  return pts;
}

inline std::vector<Point> read_points(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_points(in, path.string());
}

/// Sample points with an optional trailing target column. When `dim` is not
/// given and `expect_targets` is set, the last column is the target.
struct GridData {
  std::vector<Point> samples;
  std::optional<std::vector<double>> targets;
};

inline GridData read_grid(std::istream& in, std::optional<std::size_t> dim, bool expect_targets,
                          const std::string& source = "<stream>") {
  auto rows = read_rows(in, source);
  const std::size_t cols = rows.front().values.size();
  std::size_t d = dim.value_or(expect_targets ? cols - 1 : cols);
  if (d == 0 || (d != cols && d + 1 != cols)) {
    throw InputError(source + ": " + std::to_string(cols) +
                     " columns do not match dimension " + std::to_string(d));
  }
  if (expect_targets && d == cols) {
    throw InputError(source + ": grid has no target column");
  }
  GridData out;
  if (d + 1 == cols) out.targets.emplace();
  for (auto& row : rows) {
    if (out.targets) {
      out.targets->push_back(row.values.back());
      row.values.pop_back();
    }
    out.samples.emplace_back(std::move(row.values));
  }
  return out;
}

inline GridData read_grid(const std::filesystem::path& path, std::optional<std::size_t> dim,
                          bool expect_targets) {
  auto in = open_input(path);
  return read_grid(in, dim, expect_targets, path.string());
}

/// One value per line (same comment rules as point files).
inline std::vector<double> read_values(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<double> out;
  for (const auto& row : read_rows(in, path.string())) {
    if (row.values.size() != 1) {
      throw InputError(path.string() + ":" + std::to_string(row.line) +
                       ": expected a single value per line");
    }
    out.push_back(row.values.front());
  }
  return out;
}

inline void write_points(std::ostream& out, std::span<const Point> pts) {
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < p.dim(); ++i) out << (i ? " " : "") << format_double(p[i]);
    out << '\n';
  }
}

}  // namespace srbf::io
