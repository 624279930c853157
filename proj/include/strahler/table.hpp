#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace strahler {

struct Cell {
  std::string text;
  bool numeric = false;
};

inline Cell text_cell(std::string s) { return {std::move(s), false}; }
// An empty numeric cell is written as null in JSON.
inline Cell number_cell(std::string s) { return {std::move(s), true}; }

// Header row plus data rows. CSV always carries the header; JSON is an array
// of objects keyed by header names, numeric cells written as numbers.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

}  // namespace strahler
