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
#include "sotlogic/device.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sotlogic;

TEST_CASE("mtj resistance matches hand evaluation") {
  const DeviceParams p = DeviceParams::two_t1r_defaults();
  CHECK(mtj_area(p) == doctest::Approx(1.9634954e-15).epsilon(1e-6));
  CHECK(mtj_resistance(p, MagState::P) == doctest::Approx(oracle::r_parallel(10, 50e-9)).epsilon(1e-12));
  CHECK(mtj_resistance(p, MagState::P) == doctest::Approx(5092.96).epsilon(1e-5));
  CHECK(mtj_resistance(p, MagState::AP) == doctest::Approx(2.0 * 5092.96).epsilon(1e-5));

  const DeviceParams v = DeviceParams::vgsot_defaults();
  CHECK(mtj_resistance(v, MagState::P) == doctest::Approx(331042).epsilon(1e-5));
  CHECK(mtj_resistance(v, MagState::AP) == doctest::Approx(662085).epsilon(1e-5));
}

TEST_CASE("channel resistance") {
  CHECK(channel_resistance(DeviceParams{}) == doctest::Approx(2.78e-6 * 60e-9 / (50e-9 * 3e-9)).epsilon(1e-12));
  CHECK(channel_resistance(DeviceParams{}) == doctest::Approx(1112.0).epsilon(1e-9));
}

TEST_CASE("critical current against independent macrospin evaluation") {
  const DeviceParams p;
  for (double v : {0.0, 0.5, 0.75, 0.9, 1.0, 1.2}) {
    CAPTURE(v);
    CHECK(critical_sot_current(p, v) == doctest::Approx(oracle::ic(v)).epsilon(1e-9));
  }
  // frozen from the oracle
  CHECK(critical_sot_current(p, 0.0) == doctest::Approx(91.19e-6).epsilon(1e-3));
  CHECK(critical_sot_current(p, 0.75) == doctest::Approx(32.59e-6).epsilon(1e-3));
  CHECK(critical_sot_current(p, 0.9) == doctest::Approx(20.87e-6).epsilon(1e-3));
  CHECK(critical_sot_current(p, 1.0) == doctest::Approx(13.06e-6).epsilon(1e-3));

  DeviceParams scaled = p;
  scaled.Ic_cal = 1.7;
  CHECK(critical_sot_current(scaled, 0.3) == doctest::Approx(1.7 * oracle::ic(0.3)).epsilon(1e-12));
}

TEST_CASE("critical current is monotone in gate voltage and clamps at zero") {
  const DeviceParams p;
  double prev = critical_sot_current(p, -0.5);
  for (double v = -0.45; v < 3.0; v += 0.05) {
    const double ic = critical_sot_current(p, v);
    CHECK(ic <= prev);
    CHECK(ic >= 0.0);
    prev = ic;
  }
  CHECK(critical_sot_current(p, 5.0) == 0.0);
  CHECK(effective_anisotropy(p, 5.0) < 0.0);
}

TEST_CASE("threshold switching rule") {
  CHECK(switch_decision(150e-6, 100e-6, MagState::P) == MagState::AP);
  CHECK_FALSE(switch_decision(50e-6, 100e-6, MagState::P).has_value());
  CHECK(switch_decision(100e-6, 100e-6, MagState::P) == MagState::AP);  // inclusive
  CHECK(switch_decision(-150e-6, 100e-6, MagState::AP) == MagState::P);
  // wrong polarity never switches
  CHECK_FALSE(switch_decision(-150e-6, 100e-6, MagState::P).has_value());
  CHECK_FALSE(switch_decision(150e-6, 100e-6, MagState::AP).has_value());
}

TEST_CASE("switching never increases when the drive drops") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 300e-6);
  for (int k = 0; k < 2000; ++k) {
    const double ic = u(rng) + 1e-6, a = u(rng), b = u(rng);
    const double hi = std::max(a, b), lo = std::min(a, b);
    if (switch_decision(lo, ic, MagState::P)) CHECK(switch_decision(hi, ic, MagState::P).has_value());
    CHECK(switching_probability(lo, ic, {0.05}) <= switching_probability(hi, ic, {0.05}));
  }
}

TEST_CASE("stochastic model") {
  const SwitchModel m{0.05};
  CHECK(switching_probability(100e-6, 100e-6, m) == doctest::Approx(0.5));
  CHECK(switching_probability(200e-6, 100e-6, m) > 0.999);
  CHECK(switching_probability(10e-6, 100e-6, m) < 1e-3);
  CHECK(switching_probability(-200e-6, 100e-6, m) == doctest::Approx(switching_probability(200e-6, 100e-6, m)));
  CHECK(switch_decision(100e-6, 100e-6, MagState::P, m, 0.4) == MagState::AP);
  CHECK_FALSE(switch_decision(100e-6, 100e-6, MagState::P, m, 0.6).has_value());
}

TEST_CASE("read disturb") {
  const DeviceParams p;
  const DisturbVerdict v = check_read_disturb(p, 200e-6);
  CHECK(v.current_density == doctest::Approx(200e-6 / oracle::area(50e-9)).epsilon(1e-12));
  CHECK(v.current_density == doctest::Approx(1.0186e11).epsilon(1e-4));
  CHECK_FALSE(v.pass);
  const double edge = p.J_stt_crit * mtj_area(p);
  CHECK(check_read_disturb(p, edge * (1 - 1e-9)).pass);
  CHECK_FALSE(check_read_disturb(p, edge).pass);
  CHECK_FALSE(check_read_disturb(p, -edge).pass);
}

TEST_CASE("disturb is monotone") {
  const DeviceParams p;
  for (double i = 1e-6; i < 300e-6; i *= 1.3)
    if (check_read_disturb(p, i).pass) CHECK(check_read_disturb(p, 0.9 * i).pass);
}

TEST_CASE("parameter validation names the key") {
  DeviceParams p;
  p.D = -1;
  try {
    p.validate();
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.key() == "D");
  }
  p = DeviceParams{};
  p.TMR0 = -0.1;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  CHECK_NOTHROW(DeviceParams::vgsot_defaults().validate());
}

TEST_CASE("state mapping") {
  CHECK(logic_value(MagState::P));
  CHECK_FALSE(logic_value(MagState::AP));
  CHECK(from_logic(true) == MagState::P);
  CHECK(flipped(MagState::P) == MagState::AP);
  CHECK(constants::oersted * -50 == doctest::Approx(-3978.87).epsilon(1e-5));
}
