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
 * @file config.hpp
 * @brief Run configuration: INI-style `key = value` files plus overrides.
 *
 * Sections:
 *   (none) or [device]  device keys applied to both topologies
 *   [2t1r], [vgsot]     device keys for one topology only
 *   [run]               topology, gate, inputs, rows, cols, R_off, v_drive,
 *                       i_sot, pulse, calibrate, placement
 *   [mc]                n, sigma_t_ox, sigma_t_f, sigma_TMR, sigma_RA,
 *                       truncation, seed, bins, workers, switch_width
 *
 * Device keys: D t_f t_ox Ms Ki0 alpha P RA TMR0 beta theta_SH H_EX_Oe L W
 * T rho_SOT R_on Ic_cal J_stt_crit. Units are SI except RA (Ohm um^2) and
 * H_EX_Oe (oersted). Unknown sections or keys are errors.
 */
#ifndef SOTLOGIC_CONFIG_HPP
#define SOTLOGIC_CONFIG_HPP

#include "sotlogic/array.hpp"
#include "sotlogic/device.hpp"
#include "sotlogic/gates.hpp"
#include "sotlogic/variation.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sotlogic {

struct McSettings {
  std::size_t n = 1000;
  VariationSpec variation;
  std::size_t bins = 40;
  std::size_t workers = 1;
  double switch_width = 0.0;
};

struct RunConfig {
  DeviceParams device_2t1r = DeviceParams::two_t1r_defaults();
  DeviceParams device_vgsot = DeviceParams::vgsot_defaults();

  Topology topology = Topology::TwoT1R;
  GateKind gate = GateKind::NOR;
  std::size_t inputs = 2;
  std::size_t rows = 4;
  std::size_t cols = 4;
  double r_off = std::numeric_limits<double>::infinity();
  std::optional<double> v_drive;
  std::optional<double> i_sot;
  std::optional<double> pulse;
  bool calibrate = true;
  double placement = 0.5;

  McSettings mc;

  std::string out_dir = ".";
  std::string format = "csv";

  const DeviceParams& device() const {
    return topology == Topology::TwoT1R ? device_2t1r : device_vgsot;
  }
  DeviceParams& device() { return topology == Topology::TwoT1R ? device_2t1r : device_vgsot; }

  ArraySpec array_spec() const;
  /// Topology defaults with any explicit drive overrides applied.
  OperatingPoint operating_point() const;

  /// Throws ValidationError naming the offending key.
  void validate() const;

  /// Canonical key/value view of everything that affects results. Output
  /// location, format and worker count are excluded.
  std::map<std::string, std::string> resolved() const;
  std::string digest() const;
};

/// Names accepted by set_key, in canonical order.
const std::vector<std::string>& device_keys();
bool is_device_key(const std::string& key);
double get_device_value(const DeviceParams& p, const std::string& key);
void set_device_value(DeviceParams& p, const std::string& key, double value);

/// Applies one `key = value`. `section` is "", "device", "2t1r", "vgsot",
/// "run" or "mc"; with an empty section device keys apply to the active
/// topology only (the form used for command-line overrides), and `2t1r.RA`
/// style qualified keys are accepted. Throws ValidationError.
void set_key(RunConfig& cfg, const std::string& section, const std::string& key,
             const std::string& value);

/// Parses a config stream on top of `base`. Throws ValidationError with the
/// line number in the message.
RunConfig load_config(std::istream& in, RunConfig base = {});
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

/// The shipped default configuration text (both reference parameter sets).
std::string default_config_text();

}  // namespace sotlogic

#endif  // SOTLOGIC_CONFIG_HPP
