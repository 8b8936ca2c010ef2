#include "cavlat_cli/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "cavlat/errors.hpp"

namespace cavlat::cli {

std::string format_number(double value, int precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, precision);
  if (res.ec != std::errc{}) throw ValidationError("format_number: value does not fit");
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Table& table, int precision) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) os << ',';
    os << table.header[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_number(row[i], precision);
    }
    os << '\n';
  }
}

void write_json_rows(std::ostream& os, const Table& table, int precision) {
  os << "[\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    os << "  {";
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      if (i) os << ", ";
      os << '"' << table.header[i] << "\": ";
      const double v = table.rows[r][i];
      if (std::isfinite(v)) {
        os << format_number(v, precision);
      } else {
        os << "null";
      }
    }
    os << (r + 1 < table.rows.size() ? "},\n" : "}\n");
  }
  os << "]\n";
}

}  // namespace cavlat::cli
