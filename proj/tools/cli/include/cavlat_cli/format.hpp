#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cavlat::cli {

/// Shortest of fixed/scientific with `precision` significant digits;
/// independent of the global locale.
std::string format_number(double value, int precision);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// One header line, then one line per row, '\n' terminated.
void write_csv(std::ostream& os, const Table& table, int precision);

/// Array of objects keyed by the header.
void write_json_rows(std::ostream& os, const Table& table, int precision);

}  // namespace cavlat::cli
