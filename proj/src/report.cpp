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

#include "sotlogic/report.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sotlogic {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("table '" + name + "': row has " + std::to_string(row.size()) +
                                " cells, expected " + std::to_string(columns.size()));
  for (std::size_t i = 0; i < row.size(); ++i) {
    const bool ok = (columns[i].type == ColumnType::Integer && std::holds_alternative<std::int64_t>(row[i])) ||
                    (columns[i].type == ColumnType::Real && std::holds_alternative<double>(row[i])) ||
                    (columns[i].type == ColumnType::Text && std::holds_alternative<std::string>(row[i]));
    if (!ok) throw std::invalid_argument("table '" + name + "': wrong type in column '" + columns[i].name + "'");
  }
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

std::string config_digest(const std::map<std::string, std::string>& resolved) {
  std::uint64_t h = 14695981039346656037ULL;
  auto feed = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& [k, v] : resolved) feed(k + "=" + v + "\n");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  return csv_escape(std::get<std::string>(c));
}

void write_header(std::ostream& os, const ReportBundle& bundle) {
  for (const auto& [k, v] : bundle.metadata) os << "# " << k << '=' << v << '\n';
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << content;
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> emit_csv(const ReportBundle& bundle,
                                            const std::filesystem::path& dir,
                                            const std::string& command) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  {
    std::ostringstream os;
    write_header(os, bundle);
    os << "key,value\n";
    for (const auto& [k, v] : bundle.metadata) os << csv_escape(k) << ',' << csv_escape(v) << '\n';
    written.push_back(dir / (command + "_meta.csv"));
    write_file(written.back(), os.str());
  }
  for (const auto& t : bundle.tables) {
    std::ostringstream os;
    write_header(os, bundle);
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_escape(t.columns[i].name);
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << render(row[i]);
      os << '\n';
    }
    written.push_back(dir / (command + "_" + t.name + ".csv"));
    write_file(written.back(), os.str());
  }
  for (const auto& h : bundle.histograms) {
    std::ostringstream os;
    write_header(os, bundle);
    os << "bin_lo,bin_hi";
    for (const auto& s : h.series) os << ",count_" << csv_escape(s);
    os << '\n';
    for (std::size_t b = 0; b + 1 < h.edges.size(); ++b) {
      os << format_number(h.edges[b]) << ',' << format_number(h.edges[b + 1]);
      for (const auto& c : h.counts) os << ',' << c.at(b);
      os << '\n';
    }
    written.push_back(dir / (command + "_" + h.name + ".csv"));
    write_file(written.back(), os.str());
  }
  return written;
}

namespace {

const char* type_name(ColumnType t) {
  switch (t) {
    case ColumnType::Integer: return "integer";
    case ColumnType::Real: return "real";
    case ColumnType::Text: return "text";
  }
  return "text";
}

ColumnType parse_type(const std::string& s) {
  if (s == "integer") return ColumnType::Integer;
  if (s == "real") return ColumnType::Real;
  if (s == "text") return ColumnType::Text;
  throw std::invalid_argument("unknown column type '" + s + "'");
}

// JSON has no inf/nan, so non-finite reals travel as strings.
nlohmann::json real_to_json(double d) {
  if (std::isfinite(d)) return d;
  if (std::isnan(d)) return "nan";
  return d > 0 ? "inf" : "-inf";
}

double real_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  throw std::invalid_argument("bad real value '" + s + "'");
}

}  // namespace

nlohmann::json to_json(const ReportBundle& bundle) {
  nlohmann::json doc;
  doc["metadata"] = nlohmann::json::object();
  for (const auto& [k, v] : bundle.metadata) doc["metadata"][k] = v;

  doc["tables"] = nlohmann::json::array();
  for (const auto& t : bundle.tables) {
    nlohmann::json jt;
    jt["name"] = t.name;
    jt["columns"] = nlohmann::json::array();
    for (const auto& c : t.columns) jt["columns"].push_back({{"name", c.name}, {"type", type_name(c.type)}});
    jt["rows"] = nlohmann::json::array();
    for (const auto& row : t.rows) {
      nlohmann::json jr = nlohmann::json::array();
      for (const auto& cell : row) {
        if (const auto* i = std::get_if<std::int64_t>(&cell)) jr.push_back(*i);
        else if (const auto* d = std::get_if<double>(&cell)) jr.push_back(real_to_json(*d));
        else jr.push_back(std::get<std::string>(cell));
      }
      jt["rows"].push_back(std::move(jr));
    }
    doc["tables"].push_back(std::move(jt));
  }

  doc["histograms"] = nlohmann::json::array();
  for (const auto& h : bundle.histograms) {
    nlohmann::json jh;
    jh["name"] = h.name;
    jh["edges"] = nlohmann::json::array();
    for (double e : h.edges) jh["edges"].push_back(real_to_json(e));
    jh["series"] = h.series;
    jh["counts"] = h.counts;
    doc["histograms"].push_back(std::move(jh));
  }
  return doc;
}

ReportBundle bundle_from_json(const nlohmann::json& doc) {
  ReportBundle b;
  for (const auto& [k, v] : doc.at("metadata").items()) b.metadata[k] = v.get<std::string>();
  for (const auto& jt : doc.at("tables")) {
    Table t;
    t.name = jt.at("name").get<std::string>();
    for (const auto& jc : jt.at("columns"))
      t.columns.push_back({jc.at("name").get<std::string>(), parse_type(jc.at("type").get<std::string>())});
    for (const auto& jr : jt.at("rows")) {
      std::vector<Cell> row;
      for (std::size_t i = 0; i < jr.size() && i < t.columns.size(); ++i) {
        switch (t.columns[i].type) {
          case ColumnType::Integer: row.emplace_back(jr[i].get<std::int64_t>()); break;
          case ColumnType::Real: row.emplace_back(real_from_json(jr[i])); break;
          case ColumnType::Text: row.emplace_back(jr[i].get<std::string>()); break;
        }
      }
      t.add_row(std::move(row));
    }
    b.tables.push_back(std::move(t));
  }
  for (const auto& jh : doc.at("histograms")) {
    HistogramTable h;
    h.name = jh.at("name").get<std::string>();
    for (const auto& e : jh.at("edges")) h.edges.push_back(real_from_json(e));
    h.series = jh.at("series").get<std::vector<std::string>>();
    h.counts = jh.at("counts").get<std::vector<std::vector<std::int64_t>>>();
    b.histograms.push_back(std::move(h));
  }
  return b;
}

void emit_json(const ReportBundle& bundle, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create " + path.parent_path().string());
  }
  write_file(path, to_json(bundle).dump(2) + "\n");
}

ReportBundle read_json(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return bundle_from_json(nlohmann::json::parse(is));
}

}  // namespace sotlogic
