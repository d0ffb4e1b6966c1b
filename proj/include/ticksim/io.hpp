#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ticksim/types.hpp"

namespace ticksim::io {

using Json = nlohmann::ordered_json;

/// Shortest decimal string that round-trips the double. Locale-free.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

/// RFC-4180 quoting: wrap in quotes when the cell contains a comma, quote,
/// or newline; embedded quotes are doubled.
inline std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out;
  out.reserve(cell.size() + 2);
  out.push_back('"');
  for (const char c : cell) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return csv_escape(v.get<std::string>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

/// Column-ordered result table with a metadata object. Serializes to CSV
/// (header + rows) or JSON ({"meta": ..., "rows": [...]}).
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void set_meta(std::string key, Json value) { meta_[std::move(key)] = std::move(value); }

  void add_row(std::initializer_list<Json> cells) {
    if (cells.size() != columns_.size()) {
      throw DomainError("Table: row width does not match the header");
    }
    rows_.emplace_back(cells.begin(), cells.end());
  }

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Json>>& rows() const { return rows_; }

  std::string to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (c) out.push_back(',');
      out += csv_escape(columns_[c]);
    }
    out.push_back('\n');
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out.push_back(',');
        out += csv_cell(row[c]);
      }
      out.push_back('\n');
    }
    return out;
  }

  std::string to_json() const {
    Json doc;
    doc["meta"] = meta_;
    Json rows = Json::array();
    for (const auto& row : rows_) {
      Json obj;
      for (std::size_t c = 0; c < row.size(); ++c) obj[columns_[c]] = row[c];
      rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Json>> rows_;
  Json meta_ = Json::object();
};

/// Writes to the path, or to standard output when the path is empty.
inline void write_text(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw DomainError("cannot open output file: " + output_path);
  out << text;
  if (!out) throw NumericError("write failed: " + output_path);
}

}  // namespace ticksim::io
