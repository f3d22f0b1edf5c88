#pragma once

#include <string>
#include <vector>

namespace logfsk::csv {

/// One value formatted with 12 significant digits (booleans and counts are
/// emitted as plain integers by the callers).
std::string format(double value);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string to_string() const;  // header line + one line per row
};

/// Writes the table to `path`. I/O failures throw std::runtime_error with
/// the offending path in the message.
void write_file(const Table& table, const std::string& path);

/// Parse-back helper used by tests and consumers of emitted files.
Table read_file(const std::string& path);

}  // namespace logfsk::csv
