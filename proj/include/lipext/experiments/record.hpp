#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lipext::experiments {

using Cell = std::variant<std::int64_t, double, bool, std::string>;

// One report row as ordered (column, value) pairs.
struct Record {
  std::vector<std::pair<std::string, Cell>> fields;
  void add(std::string key, Cell value) {
    fields.emplace_back(std::move(key), std::move(value));
  }
};

std::string format_cell(const Cell& c);

// Header from the first record; fields quoted when they contain a comma,
// quote or newline. Doubles in shortest round-trip form.
std::string to_csv(const std::vector<Record>& rows);

// {"meta": {...}, "rows": [{...}, ...]} with keys in column order.
std::string to_json(const std::vector<Record>& rows, const Record& meta);

}  // namespace lipext::experiments
