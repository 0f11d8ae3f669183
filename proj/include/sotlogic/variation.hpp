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
 * @file variation.hpp
 * @brief Monte-Carlo process variation for stateful gates.
 *
 * Every trial owns an RNG stream derived from (seed, pattern, trial), so a
 * campaign is bit-identical regardless of how trials are spread over
 * worker threads.
 */
#ifndef SOTLOGIC_VARIATION_HPP
#define SOTLOGIC_VARIATION_HPP

#include "sotlogic/array.hpp"
#include "sotlogic/device.hpp"
#include "sotlogic/gates.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace sotlogic {

/// Relative standard deviations of independent per-cell Gaussian factors.
struct VariationSpec {
  double sigma_t_ox = 0.03;
  double sigma_t_f = 0.03;
  double sigma_TMR = 0.03;
  double sigma_RA = 0.0;     ///< sensitivity knob, off by default
  double truncation = 4.0;   ///< |z| bound in units of sigma
  std::uint64_t seed = 1;

  /// Throws ValidationError. Requires truncation * sigma < 1 so every
  /// sampled length stays positive.
  void validate() const;

  static VariationSpec none(std::uint64_t seed = 1) { return {0.0, 0.0, 0.0, 0.0, 4.0, seed}; }
  bool operator==(const VariationSpec&) const = default;
};

/// Per-trial random stream keyed on (seed, pattern, trial).
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t pattern, std::uint64_t trial);

  /// Standard normal draw, rejected outside [-bound, bound].
  double truncated_normal(double bound);
  double uniform();

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_;
};

/// Scales t_ox, t_f, TMR0 (and RA when enabled) of `nominal` by independent
/// factors (1 + sigma z). Always draws four normals so streams stay aligned
/// across spec changes.
DeviceParams sample_cell(const DeviceParams& nominal, const VariationSpec& spec, TrialStream& stream);

struct PatternResult {
  std::vector<bool> inputs;
  bool expected = false;
  bool must_switch = false;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  // Per-trial observables, indexed by trial.
  std::vector<double> channel_current;  ///< signed output channel current, A
  std::vector<double> i_crit;           ///< sampled output threshold, A
  std::vector<double> v_bl;             ///< BL voltage (VGSOT), V
  std::vector<double> energy;           ///< J
  std::vector<bool> switched;
  std::vector<bool> success;

  std::string label() const { return pattern_label(inputs); }
  std::size_t failures() const { return trials - successes; }
};

struct MCResult {
  Topology topology = Topology::TwoT1R;
  GateKind kind = GateKind::NOR;
  std::size_t n_inputs = 0;
  std::size_t trials = 0;
  VariationSpec spec;
  GateOp op;
  double nominal_i_crit = 0.0;  ///< threshold of the nominal output at zero bias
  std::vector<PatternResult> patterns;
};

struct McOptions {
  std::size_t workers = 1;  ///< 0 picks the hardware concurrency
  SwitchModel switching;
};

/// For every input pattern, runs `n` trials that each resample every
/// participating cell, execute the gate and compare to the boolean function.
MCResult run_mc(const ArraySpec& array_spec, const GateOp& op, std::size_t n,
                const VariationSpec& spec, const McOptions& options = {});

/// Observable the histogram is built over.
enum class Observable {
  /// 2T-1R: |I| scaled by I_c(nominal) / I_c(trial), i.e. the output current
  /// as seen against one common threshold. VGSOT: the sampled I_c(V_BL).
  Drive,
  /// 2T-1R: raw |I|. VGSOT: V_BL.
  Raw,
};

std::vector<double> observable(const MCResult& result, std::size_t pattern, Observable which);

struct Histogram {
  Observable observable = Observable::Drive;
  std::vector<double> edges;                     ///< bins + 1 edges
  std::vector<std::vector<std::size_t>> counts;  ///< [pattern][bin]
  std::vector<std::string> labels;               ///< pattern labels
  /// Decision line on the Drive axis: I_c(nominal) for 2T-1R, i_sot for VGSOT.
  double threshold = 0.0;
  /// Fraction of must-hold samples lying on the switching side of the
  /// decision line, i.e. inside the region the must-switch patterns occupy.
  double overlap = 0.0;
};

/// Fixed-width bins over the pooled observable range. Throws
/// std::invalid_argument on an empty result or zero bins.
Histogram current_histogram(const MCResult& result, std::size_t bins,
                            Observable which = Observable::Drive);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);
/// Asymptotic critical value c(alpha) sqrt((n + m) / (n m)).
double ks_critical(std::size_t n, std::size_t m, double alpha);

/// Must-hold trials whose sampled drive reached the sampled threshold.
std::size_t unintentional_switches(const MCResult& result, std::size_t pattern);

}  // namespace sotlogic

#endif  // SOTLOGIC_VARIATION_HPP
