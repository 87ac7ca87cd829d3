#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace nppq::csv {

using Row = std::vector<std::string>;

/// RFC 4180 field quoting: fields containing a comma, quote, CR or LF are
/// wrapped in quotes with embedded quotes doubled.
std::string quote(const std::string& field);
std::string format_row(const Row& row);

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite.
std::string number(double v);

struct Table {
  Row header;
  std::vector<Row> rows;

  /// Column index by header name; throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
  const std::string& at(std::size_t row, const std::string& name) const;
};

std::string format_table(const Table& t);
/// Writes through a temporary file and renames it into place.
void write_table(const Table& t, const std::filesystem::path& path);

Table parse_table(const std::string& text);
Table read_table(const std::filesystem::path& path);

double parse_number(const std::string& s);

}  // namespace nppq::csv
