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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace sotlogic;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ReportBundle sample() {
  ReportBundle b;
  b.metadata = {{"tool", "sotlogic"}, {"seed", "3"}};
  Table t{"cases", {{"name", ColumnType::Text}, {"n", ColumnType::Integer}, {"x", ColumnType::Real}}, {}};
  t.add_row({std::string("a,b"), std::int64_t{3}, 1.0 / 3.0});
  t.add_row({std::string("plain"), std::int64_t{-1}, std::numeric_limits<double>::infinity()});
  b.tables.push_back(t);
  b.histograms.push_back({"hist", {0.0, 0.5, 1.0}, {"00", "01"}, {{1, 2}, {3, 0}}});
  return b;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sotlogic_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(1.0 / 3.0) == "0.333333333");
  CHECK(format_number(177.28e-6) == "0.00017728");
  CHECK(format_number(2e-9) == "2e-09");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-1.5) == "-1.5");
}

TEST_CASE("rows are type checked") {
  Table t{"t", {{"a", ColumnType::Integer}}, {}};
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(t.add_row({std::int64_t{1}, std::int64_t{2}}), std::invalid_argument);
}

TEST_CASE("csv emission") {
  const fs::path dir = scratch("csv");
  const auto files = emit_csv(sample(), dir, "demo");
  CHECK(files.size() == 3);
  const std::string cases = slurp(dir / "demo_cases.csv");
  CHECK(cases.find("# seed=3\n") != std::string::npos);
  CHECK(cases.find("name,n,x\n\"a,b\",3,0.333333333\nplain,-1,inf\n") != std::string::npos);
  const std::string hist = slurp(dir / "demo_hist.csv");
  CHECK(hist.find("bin_lo,bin_hi,count_00,count_01\n0,0.5,1,3\n0.5,1,2,0\n") != std::string::npos);
  CHECK(fs::exists(dir / "demo_meta.csv"));
}

TEST_CASE("json round trip is lossless and stable") {
  const ReportBundle b = sample();
  const fs::path dir = scratch("json");
  emit_json(b, dir / "a.json");
  const ReportBundle back = read_json(dir / "a.json");
  CHECK(back == b);
  emit_json(back, dir / "b.json");
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
}

TEST_CASE("digest") {
  CHECK(config_digest({}) == "cbf29ce484222325");
  CHECK(config_digest({{"a", "1"}}) != config_digest({{"a", "2"}}));
}
