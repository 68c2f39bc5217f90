#include "export.hpp"

#include <fstream>

#include <json.hpp>

#include "moat/errors.hpp"
#include "moat/textio.hpp"

namespace moat::tools {

Cell Cell::str(std::string s) {
  Cell c;
  c.kind = Kind::text;
  c.text = std::move(s);
  return c;
}

Cell Cell::num(double v) {
  Cell c;
  c.kind = Kind::number;
  c.number = v;
  return c;
}

Cell Cell::integer_of(long long v) {
  Cell c;
  c.kind = Kind::integer;
  c.integer = v;
  return c;
}

std::string format_cell(const Cell& cell) {
  switch (cell.kind) {
    case Cell::Kind::text: return cell.text;
    case Cell::Kind::number: return format_double(cell.number);
    case Cell::Kind::integer: return std::to_string(cell.integer);
  }
  return {};
}

void write_csv(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out << (i ? "," : "") << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_cell(row[i]);
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

void write_json(const std::filesystem::path& path, const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size() && i < table.header.size(); ++i) {
      switch (row[i].kind) {
        case Cell::Kind::text: obj[table.header[i]] = row[i].text; break;
        case Cell::Kind::number: obj[table.header[i]] = row[i].number; break;
        case Cell::Kind::integer: obj[table.header[i]] = row[i].integer; break;
      }
    }
    rows.push_back(std::move(obj));
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << rows.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace moat::tools
