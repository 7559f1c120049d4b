#include "lipext/experiments/record.hpp"

#include <cmath>

#include "json.hpp"
#include "lipext/core/format.hpp"

namespace lipext::experiments {

std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::ordered_json to_object(const Record& r) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (const auto& [key, cell] : r.fields) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) {
      obj[key] = *i;
    } else if (const auto* d = std::get_if<double>(&cell)) {
      if (std::isfinite(*d)) {
        obj[key] = *d;
      } else {
        obj[key] = format_double(*d);
      }
    } else if (const auto* b = std::get_if<bool>(&cell)) {
      obj[key] = *b;
    } else {
      obj[key] = std::get<std::string>(cell);
    }
  }
  return obj;
}

}  // namespace

std::string to_csv(const std::vector<Record>& rows) {
  std::string out;
  if (rows.empty()) return out;
  for (std::size_t i = 0; i < rows[0].fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(rows[0].fields[i].first);
  }
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.fields.size(); ++i) {
      if (i) out += ',';
      out += csv_field(format_cell(r.fields[i].second));
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const std::vector<Record>& rows, const Record& meta) {
  nlohmann::ordered_json doc;
  doc["meta"] = to_object(meta);
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) doc["rows"].push_back(to_object(r));
  return doc.dump(2) + "\n";
}

}  // namespace lipext::experiments
