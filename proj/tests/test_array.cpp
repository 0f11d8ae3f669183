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

#include "oracle.hpp"
#include "sotlogic/array.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

using namespace sotlogic;

namespace {

ArraySpec spec_for(Topology t, double r_on) {
  ArraySpec s;
  s.topology = t;
  s.nominal = t == Topology::TwoT1R ? DeviceParams::two_t1r_defaults() : DeviceParams::vgsot_defaults();
  s.nominal.R_on = r_on;
  return s;
}

Array with_inputs(const ArraySpec& s, bool a, bool b) {
  Array arr(s);
  arr.set_state(0, 0, from_logic(b));
  arr.set_state(1, 0, from_logic(a));
  arr.set_state(3, 0, MagState::P);  // NOR-style output init
  return arr;
}

const std::array<std::size_t, 2> kInputs{0, 1};

}  // namespace

TEST_CASE("2T-1R read currents, R_on = 0") {
  const ArraySpec s = spec_for(Topology::TwoT1R, 0.0);
  const double rp = oracle::r_parallel(10, 50e-9), rch = 1112.0;
  struct Case {
    bool a, b;
    double frozen;
  };
  for (const Case c : {Case{false, false, 177.28e-6}, Case{false, true, 244.05e-6}, Case{true, false, 244.05e-6},
                       Case{true, true, 300.67e-6}}) {
    CAPTURE(c.a);
    CAPTURE(c.b);
    const Array arr = with_inputs(s, c.a, c.b);
    const Solution sol = solve_2t1r_read(arr, kInputs, 3, 0, 1.1);
    const double r[2] = {c.b ? rp : 2 * rp, c.a ? rp : 2 * rp};
    const double i = sol.branch(net_names::output).current;
    CHECK(i == doctest::Approx(oracle::two_t1r_current(1.1, 0.0, rch, r, 2)).epsilon(1e-12));
    CHECK(i == doctest::Approx(c.frozen).epsilon(1e-3));
    CHECK(sol.kcl_residual() < 1e-9);
    CHECK(sol.branch(net_names::input(0)).current + sol.branch(net_names::input(1)).current ==
          doctest::Approx(i).epsilon(1e-12));
  }
}

TEST_CASE("VGSOT divider") {
  const ArraySpec s = spec_for(Topology::VGSOT, 1e3);
  for (auto [a, b, v] : {std::tuple{false, false, 0.75}, {false, true, 0.9}, {true, false, 0.9}, {true, true, 1.0}}) {
    const Array arr = with_inputs(s, a, b);
    const Solution sol = solve_vgsot_divider(arr, kInputs, 3, 0, 1.5);
    CHECK(sol.voltage(net_names::shared) == doctest::Approx(v).epsilon(1e-9));
    CHECK(sol.kcl_residual() < 1e-9);
  }
  // output held in AP changes the ratio
  Array arr = with_inputs(s, false, true);
  arr.set_state(3, 0, MagState::AP);
  const double rp = oracle::r_parallel(650, 50e-9);
  const double r[2] = {rp, 2 * rp};
  CHECK(solve_vgsot_divider(arr, kInputs, 3, 0, 1.5).voltage(net_names::shared) ==
        doctest::Approx(oracle::divider(1.5, 2 * rp, r, 2)).epsilon(1e-12));
}

TEST_CASE("general solver agrees with the closed forms") {
  for (Topology t : {Topology::TwoT1R, Topology::VGSOT}) {
    for (double r_on : {0.0, 1e3, 5e3}) {
      const ArraySpec s = spec_for(t, r_on);
      for (int p = 0; p < 4; ++p) {
        const Array arr = with_inputs(s, p & 2, p & 1);
        const double v = t == Topology::TwoT1R ? 1.1 : 1.5;
        const Solution closed = solve_gate_network(arr, kInputs, 3, 0, v);
        const Solution general = solve_general(build_gate_netlist(arr, kInputs, 3, 0, v));
        CHECK(general.kcl_residual() < 1e-9);
        for (const auto& b : closed.branches)
          CHECK(general.branch(b.label).current == doctest::Approx(b.current).epsilon(1e-9));
        CHECK(general.voltage(net_names::shared) == doctest::Approx(closed.voltage(net_names::shared)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("symmetric input patterns give identical observables") {
  for (Topology t : {Topology::TwoT1R, Topology::VGSOT}) {
    const ArraySpec s = spec_for(t, 1e3);
    const Solution a = solve_gate_network(with_inputs(s, false, true), kInputs, 3, 0, 1.2);
    const Solution b = solve_gate_network(with_inputs(s, true, false), kInputs, 3, 0, 1.2);
    CHECK(a.branch(net_names::output).current == doctest::Approx(b.branch(net_names::output).current).epsilon(1e-14));
  }
}

TEST_CASE("off-state leakage through unselected rows") {
  ArraySpec s = spec_for(Topology::TwoT1R, 1e3);
  s.r_off = 1e9;
  const Array arr = with_inputs(s, true, true);
  const Solution leaky = solve_gate_network(arr, kInputs, 3, 0, 1.1);
  CHECK(leaky.kcl_residual() < 1e-9);
  CHECK(leaky.branch("leak2_read").current > 0.0);
  ArraySpec tight = s;
  tight.r_off = std::numeric_limits<double>::infinity();
  const double ideal = solve_gate_network(with_inputs(tight, true, true), kInputs, 3, 0, 1.1).branch(net_names::output).current;
  CHECK(leaky.branch(net_names::output).current != ideal);
  CHECK(std::abs(leaky.branch(net_names::output).current / ideal - 1) < 1e-3);
}

TEST_CASE("topology mismatch and selection errors") {
  const Array two(spec_for(Topology::TwoT1R, 1e3));
  CHECK_THROWS_AS(solve_vgsot_divider(two, kInputs, 3, 0, 1.5), TopologyMismatch);
  const std::array<std::size_t, 2> clash{0, 3};
  CHECK_THROWS_AS(solve_2t1r_read(two, clash, 3, 0, 1.1), std::invalid_argument);
  CHECK_THROWS_AS(solve_2t1r_read(two, kInputs, 9, 0, 1.1), std::invalid_argument);
  ArraySpec small = spec_for(Topology::TwoT1R, 1e3);
  small.rows = 2;
  CHECK_THROWS_AS(small.validate(), ValidationError);
}

TEST_CASE("array state and csv round trip") {
  ArraySpec s = spec_for(Topology::VGSOT, 1e3);
  s.rows = 3;
  s.cols = 5;
  Array arr(s);
  CHECK(arr.state(2, 4) == MagState::AP);
  arr = write_cell(arr, 2, 4, MagState::P);
  arr.set_state(0, 1, MagState::P);
  std::stringstream buf;
  write_array_csv(buf, arr);
  const Array back = read_array_csv(buf, s.nominal);
  CHECK(back == arr);
  CHECK(back.topology() == Topology::VGSOT);
  std::istringstream bad("rows,cols,topology\n3,2,2t1r\n1,0\n0,x\n1,1\n");
  CHECK_THROWS(read_array_csv(bad, s.nominal));
  CHECK_THROWS_AS(arr.cell(3, 0), std::out_of_range);
}

TEST_CASE("topology names") {
  CHECK(parse_topology("2t1r") == Topology::TwoT1R);
  CHECK(parse_topology("VGSOT") == Topology::VGSOT);
  CHECK_THROWS(parse_topology("3t"));
}
