#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace negamm::cli {

using Cell = std::variant<double, long long, std::string>;

/// Column-oriented result of a subcommand, written either as CSV with a
/// header row or as JSON objects keyed by the column names.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Emitted under "meta" in JSON output only.
  std::vector<std::pair<std::string, std::string>> meta;
};

/// Shortest round-trip decimal; -0 prints as 0, non-finite as inf/-inf/nan.
std::string format_number(double v);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

}  // namespace negamm::cli
