#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace steerkit::cli {

/// Shortest representation that parses back to the same double.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Accumulates comma-separated rows with LF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  CsvWriter& cell(double v) { return raw(format_number(v)); }
  CsvWriter& cell(int v) { return raw(std::to_string(v)); }
  CsvWriter& cell(bool v) { return raw(v ? "true" : "false"); }
  CsvWriter& cell(std::string_view s) { return raw(s); }
  CsvWriter& cell(const char* s) { return raw(s); }
  CsvWriter& empty() { return raw(""); }

  void end_row() {
    out_ << '\n';
    first_ = true;
  }

  void header(const std::vector<std::string>& names) {
    for (const auto& n : names) raw(n);
    end_row();
  }

 private:
  CsvWriter& raw(std::string_view s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
    return *this;
  }

  std::ostream& out_;
  bool first_ = true;
};

/// Splits one CSV line (no quoting; the writer never emits commas inside cells).
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace steerkit::cli
