#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <json.hpp>

namespace kerrsq::io {

using Cell = std::variant<double, long long, std::string, bool>;

/// Column-oriented numeric table with optional comment lines. CSV output is
/// deterministic: '.' decimal separator, scientific notation with 13
/// significant digits for doubles.
struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

inline std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<V, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<V, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      cell);
}

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (const char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

inline std::string render_csv(const Table& table) {
  std::ostringstream out;
  for (const auto& comment : table.comments) {
    out << "# " << comment << '\n';
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(format_cell(row[i]));
    }
    out << '\n';
  }
  return out.str();
}

inline std::string render_json(const Table& table, const nlohmann::json& metadata) {
  nlohmann::json cols = nlohmann::json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : table.rows) {
      std::visit([&](const auto& v) { arr.push_back(v); }, row[c]);
    }
    cols[table.columns[c]] = std::move(arr);
  }
  nlohmann::json doc;
  doc["metadata"] = metadata;
  doc["column_order"] = table.columns;
  doc["columns"] = std::move(cols);
  return doc.dump(2) + "\n";
}

enum class OutputFormat { csv, json };

inline std::optional<OutputFormat> parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  return std::nullopt;
}

/// Serializes the table and writes it to the path, or to stdout when the
/// path is empty. Returns false on I/O failure.
inline bool write_output(const Table& table, const nlohmann::json& metadata,
                         const std::string& path, OutputFormat format) {
  const std::string payload =
      format == OutputFormat::csv ? render_csv(table) : render_json(table, metadata);
  if (path.empty()) {
    std::cout << payload;
    return static_cast<bool>(std::cout);
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) return false;
  file << payload;
  return static_cast<bool>(file);
}

/// Inclusive sampling range "start:stop:count" with count >= 2.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  int count = 2;
};

inline std::optional<Range> parse_range(const std::string& text) {
  Range r;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.start, &r.stop, &r.count, &extra) != 3) {
    return std::nullopt;
  }
  if (r.count < 2) return std::nullopt;
  return r;
}

inline std::vector<double> linspace(const Range& range) {
  std::vector<double> grid(range.count);
  const double step = (range.stop - range.start) / (range.count - 1);
  for (int i = 0; i < range.count; ++i) {
    grid[i] = range.start + step * i;
  }
  grid.back() = range.stop;
  return grid;
}

inline std::vector<double> single_point(double value) { return {value}; }

}  // namespace kerrsq::io
