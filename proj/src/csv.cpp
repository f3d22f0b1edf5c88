#include "logfsk/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace logfsk::csv {

std::string format(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) {
    throw std::logic_error("csv row width does not match header");
  }
  rows.push_back(std::move(row));
}

std::string Table::to_string() const {
  std::ostringstream os;
  auto emit_line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  emit_line(header);
  for (const auto& row : rows) emit_line(row);
  return os.str();
}

void write_file(const Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << table.to_string();
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  Table table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      table.add_row(std::move(cells));
    }
  }
  return table;
}

}  // namespace logfsk::csv
