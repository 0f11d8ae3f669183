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

#include "sotlogic/network.hpp"

#include <doctest.h>

#include <limits>

using namespace sotlogic;

TEST_CASE("voltage divider") {
  Netlist<double> net;
  const auto a = net.add_node("a"), m = net.add_node("m");
  net.add_source(a, 2.0, "src");
  net.add_resistor(a, m, 1000.0, "r1");
  net.add_resistor(m, Netlist<double>::ground, 3000.0, "r2");
  const auto sol = solve_general(net);
  CHECK(sol.voltage("m") == doctest::Approx(1.5));
  CHECK(sol.branch("r1").current == doctest::Approx(0.5e-3));
  CHECK(sol.outflow(a) == doctest::Approx(0.5e-3));
  CHECK(sol.kcl_residual() < 1e-12);
}

TEST_CASE("parallel inputs into a shared node") {
  // 2T-1R (P,AP) with R_on = 0: 5093 || 10186 then 1112 to ground.
  const double rp = 5092.958, rap = 2 * rp, rch = 1112.0;
  Netlist<double> net;
  const auto d = net.add_node("d"), s = net.add_node("s");
  net.add_source(d, 1.1, "v");
  net.add_resistor(d, s, rp, "in0");
  net.add_resistor(d, s, rap, "in1");
  net.add_resistor(s, Netlist<double>::ground, rch, "ch");
  const auto sol = solve_general(net);
  const double expect = 1.1 / (rp * rap / (rp + rap) + rch);
  CHECK(sol.branch("ch").current == doctest::Approx(expect).epsilon(1e-12));
  CHECK(sol.branch("ch").current == doctest::Approx(244.05e-6).epsilon(1e-3));
  CHECK(sol.branch("in0").current == doctest::Approx(2 * sol.branch("in1").current).epsilon(1e-12));
}

TEST_CASE("open branches carry no current") {
  Netlist<double> net;
  const auto a = net.add_node("a"), b = net.add_node("b");
  net.add_source(a, 1.0, "v");
  net.add_resistor(a, b, 10.0, "r");
  net.add_resistor(b, Netlist<double>::ground, 10.0, "g");
  net.add_resistor(a, Netlist<double>::ground, std::numeric_limits<double>::infinity(), "open");
  const auto sol = solve_general(net);
  CHECK(sol.branch("open").current == 0.0);
  CHECK(sol.voltage("b") == doctest::Approx(0.5));
}

TEST_CASE("float scalar instantiation") {
  Netlist<float> net;
  const auto a = net.add_node("a"), m = net.add_node("m");
  net.add_source(a, 1.0f, "v");
  net.add_resistor(a, m, 1.0f, "r1");
  net.add_resistor(m, Netlist<float>::ground, 1.0f, "r2");
  CHECK(solve_general(net).voltage("m") == doctest::Approx(0.5f));
}

TEST_CASE("bad networks") {
  Netlist<double> net;
  const auto a = net.add_node("a"), f = net.add_node("floating");
  CHECK_THROWS_AS(net.add_resistor(a, a, 1.0, "loop"), std::invalid_argument);
  CHECK_THROWS_AS(net.add_resistor(a, f, 0.0, "zero"), std::invalid_argument);
  CHECK_THROWS_AS(net.add_resistor(a, 9, 1.0, "x"), std::out_of_range);
  net.add_resistor(a, Netlist<double>::ground, 1.0, "r");
  CHECK_THROWS_AS(solve_general(net), std::invalid_argument);  // no source
  net.add_source(a, 1.0, "v");
  CHECK_THROWS_AS(net.add_source(a, 2.0, "v2"), std::invalid_argument);
  CHECK_THROWS_AS(solve_general(net), SingularNetwork);  // "floating" is isolated
}
