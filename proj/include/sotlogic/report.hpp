/*
 * Copyright 2026 The sotlogic Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file report.hpp
 * @brief Deterministic CSV/JSON serialization of run results.
 */
#ifndef SOTLOGIC_REPORT_HPP
#define SOTLOGIC_REPORT_HPP

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace sotlogic {

enum class ColumnType { Integer, Real, Text };

using Cell = std::variant<std::int64_t, double, std::string>;

struct Column {
  std::string name;
  ColumnType type = ColumnType::Real;
  bool operator==(const Column&) const = default;
};

struct Table {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws std::invalid_argument when the row does not match the columns.
  void add_row(std::vector<Cell> row);
  bool operator==(const Table&) const = default;
};

struct HistogramTable {
  std::string name;
  std::vector<double> edges;
  std::vector<std::string> series;
  std::vector<std::vector<std::int64_t>> counts;  ///< [series][bin]
  bool operator==(const HistogramTable&) const = default;
};

struct ReportBundle {
  std::map<std::string, std::string> metadata;
  std::vector<Table> tables;
  std::vector<HistogramTable> histograms;
  bool operator==(const ReportBundle&) const = default;
};

/// 9 significant digits, '.' decimal separator, no locale.
std::string format_number(double v);

/// 64-bit FNV-1a over the canonical `key=value\n` rendering, as 16 hex digits.
std::string config_digest(const std::map<std::string, std::string>& resolved);

/// Writes `<command>_meta.csv`, `<command>_<table>.csv` for every table and
/// `<command>_<histogram>.csv` for every histogram into `dir`. Returns the
/// paths written. Throws std::runtime_error on I/O failure.
std::vector<std::filesystem::path> emit_csv(const ReportBundle& bundle,
                                            const std::filesystem::path& dir,
                                            const std::string& command);

nlohmann::json to_json(const ReportBundle& bundle);
ReportBundle bundle_from_json(const nlohmann::json& doc);

/// One sorted-key JSON document. Throws std::runtime_error on I/O failure.
void emit_json(const ReportBundle& bundle, const std::filesystem::path& path);
ReportBundle read_json(const std::filesystem::path& path);

}  // namespace sotlogic

#endif  // SOTLOGIC_REPORT_HPP
