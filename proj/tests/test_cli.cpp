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

#include "sotlogic/cli.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::initializer_list<std::string> args) {
  std::vector<std::string> store{"sotlogic"};
  store.insert(store.end(), args);
  std::vector<const char*> argv;
  for (const auto& s : store) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = sotlogic::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sotlogic_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_tree(const fs::path& a, const fs::path& b) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++n;
    if (slurp(e.path()) != slurp(b / e.path().filename())) return false;
  }
  return n > 0 && n == static_cast<std::size_t>(std::distance(fs::directory_iterator(b), fs::directory_iterator{}));
}

}  // namespace

TEST_CASE("truth-table writes its tables") {
  const fs::path dir = scratch("tt");
  const Run r = cli({"truth-table", "--out", dir.string(), "--gate", "NAND", "--inputs", "3"});
  CHECK(r.code == 0);
  const std::string tt = slurp(dir / "truth-table_truth_table.csv");
  CHECK(tt.find("pattern,IN2,IN1,IN0,expected,output,correct") != std::string::npos);
  CHECK(tt.find("\n111,1,1,1,0,0,1,") != std::string::npos);
  CHECK(fs::exists(dir / "truth-table_calibration.csv"));
  CHECK(slurp(dir / "truth-table_meta.csv").find("# command=truth-table") != std::string::npos);
}

TEST_CASE("default 60 uA VGSOT write current fails verification") {
  const fs::path dir = scratch("vg60");
  CHECK(cli({"truth-table", "--topology", "vgsot", "--no-calibrate", "--out", dir.string()}).code == 1);
}

TEST_CASE("configuration errors exit 2") {
  const fs::path dir = scratch("bad");
  CHECK(cli({"truth-table", "--frobnicate"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"truth-table", "--set", "nope=1", "--out", dir.string()}).code == 2);
  CHECK(cli({"truth-table", "--set", "D=-1", "--out", dir.string()}).code == 2);
  CHECK(cli({"truth-table", "--config", (dir / "missing.ini").string()}).code == 2);
  CHECK(cli({"truth-table", "--format", "xml"}).code == 2);
  CHECK(cli({"sweep", "--axis", "colour", "--from", "0", "--to", "1", "--out", dir.string()}).code == 2);
  CHECK(cli({"gate", "--ops", (dir / "missing.ops").string(), "--out", dir.string()}).code == 2);
}

TEST_CASE("no separating threshold exits 1") {
  const fs::path dir = scratch("insep");
  const Run r = cli({"calibrate", "--topology", "vgsot", "--set", "beta=0", "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("inseparable") != std::string::npos);
}

TEST_CASE("mc output is reproducible across runs and worker counts") {
  for (const char* fmt : {"csv", "json"}) {
    const fs::path a = scratch(std::string("mc_a_") + fmt), b = scratch(std::string("mc_b_") + fmt),
                   c = scratch(std::string("mc_c_") + fmt);
    for (const auto& [dir, workers] : {std::pair{a, "1"}, {b, "1"}, {c, "4"}})
      REQUIRE(cli({"mc", "--n", "200", "--seed", "11", "--workers", workers, "--format", fmt, "--out",
                   dir.string()})
                  .code == 0);
    CHECK(same_tree(a, b));
    CHECK(same_tree(a, c));
  }
  const fs::path d = scratch("mc_d");
  REQUIRE(cli({"mc", "--n", "200", "--seed", "12", "--out", d.string()}).code == 0);
  CHECK_FALSE(same_tree(scratch("mc_e"), d));
}

TEST_CASE("config file, environment and flag precedence") {
  const fs::path dir = scratch("prec");
  {
    std::ofstream(dir / "c.ini") << "[run]\ngate = OR\ninputs = 3\n[mc]\nseed = 21\n";
  }
  REQUIRE(cli({"truth-table", "--config", (dir / "c.ini").string(), "--out", dir.string()}).code == 0);
  std::string meta = slurp(dir / "truth-table_meta.csv");
  CHECK(meta.find("# gate=OR") != std::string::npos);
  CHECK(meta.find("# inputs=3") != std::string::npos);

  ::setenv(sotlogic::cli::kConfigEnv, (dir / "c.ini").string().c_str(), 1);
  REQUIRE(cli({"truth-table", "--gate", "AND", "--out", dir.string()}).code == 0);
  ::unsetenv(sotlogic::cli::kConfigEnv);
  meta = slurp(dir / "truth-table_meta.csv");
  CHECK(meta.find("# gate=AND") != std::string::npos);
  CHECK(meta.find("# inputs=3") != std::string::npos);
  CHECK(meta.find("# seed=21") != std::string::npos);

  REQUIRE(cli({"truth-table", "--inputs", "2", "--set", "inputs=4", "--out", dir.string()}).code == 0);
  CHECK(slurp(dir / "truth-table_meta.csv").find("# inputs=4") != std::string::npos);
}

TEST_CASE("gate command runs an op file on an array") {
  const fs::path dir = scratch("gate");
  const Run r = cli({"gate", "--ops", SOTLOGIC_CONFIG_DIR "/nor_chain.ops", "--array",
                     SOTLOGIC_CONFIG_DIR "/example_array.csv", "--out", dir.string()});
  REQUIRE(r.code == 0);
  // col 0: NOR(0,0)=1 at row 2; col 1: NOR(1,0)=0; col 2: NAND(0,1)=1 at row 3; col 3: OR(1,1)=1
  const std::string arr = slurp(dir / "gate_array.csv");
  CHECK(arr == "rows,cols,topology\n4,4,2t1r\n0,1,0,1\n0,0,1,1\n1,0,0,1\n0,0,1,0\n");
  CHECK(slurp(dir / "gate_trace.csv").find("op,gate,col,input_rows") != std::string::npos);
}

TEST_CASE("margin, calibrate and sweep") {
  const fs::path dir = scratch("misc");
  CHECK(cli({"margin", "--set", "R_on=0", "--out", dir.string()}).code == 0);
  CHECK(slurp(dir / "margin_margin.csv").find("NOR,2t1r,2,0.000244048248,0.000177277585,") != std::string::npos);
  CHECK(cli({"calibrate", "--topology", "vgsot", "--out", dir.string()}).code == 0);
  // calibrated at RA = 10 only: too little current at high RA, too much at low RA
  const Run s = cli({"sweep", "--axis", "RA", "--from", "5", "--to", "50", "--points", "46", "--out",
                     dir.string()});
  CHECK(s.code == 0);
  const std::string sweep = slurp(dir / "sweep_sweep.csv");
  CHECK(sweep.find("RA,margin_A,relative_margin") != std::string::npos);
  CHECK(sweep.find("\n10,") != std::string::npos);
  const std::string b = slurp(dir / "sweep_boundaries.csv");
  CHECK(b.find("logic,8,9,fail->pass") != std::string::npos);
  CHECK(b.find("logic,") != b.rfind("logic,"));
  CHECK(b.find("disturb,") != std::string::npos);

  CHECK(cli({"sweep", "--axis", "v_drive", "--from", "1.1", "--to", "1.1", "--points", "1", "--out",
             dir.string()})
            .code == 0);
  const std::string one = slurp(dir / "sweep_sweep.csv");
  CHECK(cli({"margin", "--out", dir.string()}).code == 0);
  const std::string m = slurp(dir / "margin_margin.csv");
  // single-point sweep equals the margin command
  const std::string margin_value = m.substr(m.rfind("\n", m.size() - 2) + 1).substr(0);
  std::vector<std::string> mf, sf;
  for (std::stringstream ss(margin_value); ss.good();) mf.emplace_back(), std::getline(ss, mf.back(), ',');
  std::stringstream last_line(one.substr(one.rfind("\n", one.size() - 2) + 1));
  for (std::string f; std::getline(last_line, f, ',');) sf.push_back(f);
  REQUIRE(mf.size() > 6);
  REQUIRE(sf.size() > 3);
  CHECK(sf[1] == mf[5]);
  CHECK(sf[3] == mf[6]);
}

TEST_CASE("zero TMR cannot realize a gate") {
  const fs::path dir = scratch("tmr0");
  const Run r = cli({"truth-table", "--set", "TMR0=0", "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("inseparable") != std::string::npos);
}

TEST_CASE("help") {
  const Run r = cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("truth-table") != std::string::npos);
}
