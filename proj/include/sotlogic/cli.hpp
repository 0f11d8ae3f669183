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
 * @file cli.hpp
 * @brief Command implementations behind the `sotlogic` executable.
 *
 * Each command turns a resolved RunConfig into a ReportBundle and an exit
 * status: 0 success, 1 logic-verification failure, 2 configuration error.
 */
#ifndef SOTLOGIC_CLI_HPP
#define SOTLOGIC_CLI_HPP

#include "sotlogic/config.hpp"
#include "sotlogic/report.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace sotlogic::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kConfigEnv = "SOTLOGIC_CONFIG";

enum ExitCode : int { kOk = 0, kLogicFailure = 1, kConfigError = 2 };

struct CommandResult {
  int exit_code = kOk;
  ReportBundle bundle;
  std::string message;
  /// Extra non-bundle outputs, file name -> content.
  std::map<std::string, std::string> files;
};

struct GateInputs {
  std::string ops_path;
  std::optional<std::string> array_path;
};

struct SweepSpec {
  std::string axis;
  double from = 0.0;
  double to = 0.0;
  std::size_t points = 10;
};

CommandResult cmd_truth_table(const RunConfig& cfg);
CommandResult cmd_gate(const RunConfig& cfg, const GateInputs& in);
CommandResult cmd_mc(const RunConfig& cfg);
CommandResult cmd_margin(const RunConfig& cfg);
CommandResult cmd_calibrate(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg, const SweepSpec& sweep);

/// Writes the bundle (and extra files) under cfg.out_dir in cfg.format.
void write_outputs(const RunConfig& cfg, const std::string& command, const CommandResult& result);

/// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sotlogic::cli

#endif  // SOTLOGIC_CLI_HPP
