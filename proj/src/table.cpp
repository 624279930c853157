#include "strahler/table.hpp"

#include <charconv>
#include <stdexcept>

#include <json.hpp>

namespace strahler {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json json_value(const Cell& cell) {
  if (!cell.numeric) return cell.text;
  if (cell.text.empty()) return nullptr;
  const char* first = cell.text.data();
  const char* last = first + cell.text.size();
  std::int64_t i = 0;
  if (auto [p, ec] = std::from_chars(first, last, i); ec == std::errc() && p == last) return i;
  double d = 0;
  if (auto [p, ec] = std::from_chars(first, last, d); ec == std::errc() && p == last) return d;
  return cell.text;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != header.size()) throw std::logic_error("row width does not match the header");
  rows.push_back(std::move(row));
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(table.header[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(row[i].text);
    }
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.header[i]] = json_value(row[i]);
    array.push_back(std::move(obj));
  }
  out << array.dump(2) << '\n';
}

}  // namespace strahler
