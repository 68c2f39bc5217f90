#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace moat::tools {

/// A rectangular table with typed cells, exportable as CSV or JSON. Numeric
/// cells are rendered as shortest round-trip decimals in both formats.
struct Cell {
  enum class Kind { text, number, integer } kind = Kind::text;
  std::string text;
  double number = 0;
  long long integer = 0;

  static Cell str(std::string s);
  static Cell num(double v);
  static Cell integer_of(long long v);
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// Comma-separated, header row first, '\n' terminators, no quoting (writers
/// only emit alphanumeric labels).
void write_csv(const std::filesystem::path& path, const Table& table);

/// The same records as an array of objects keyed by the header.
void write_json(const std::filesystem::path& path, const Table& table);

std::string format_cell(const Cell& cell);

}  // namespace moat::tools
