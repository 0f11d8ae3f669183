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
 * @file gates.hpp
 * @brief Stateful NOR/NAND/OR/AND gates, margins, calibration and energy.
 *
 * 2T-1R: the summed read current of the inputs is the SOT write current of
 * the output. VGSOT: the inputs set the floating BL voltage through a
 * divider, the BL voltage gates the output's anisotropy, and a fixed SOT
 * current switches the output only when its threshold has dropped enough.
 *
 * NOR/NAND start the output at P and switch it to AP; OR/AND start at AP
 * and switch it to P with reversed drive polarity.
 */
#ifndef SOTLOGIC_GATES_HPP
#define SOTLOGIC_GATES_HPP

#include "sotlogic/array.hpp"
#include "sotlogic/device.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sotlogic {

enum class GateKind { NOR, NAND, OR, AND };

const char* to_string(GateKind k) noexcept;
GateKind parse_gate_kind(const std::string& s);

/// Boolean reference function.
bool evaluate(GateKind kind, const std::vector<bool>& inputs);

/// Output state the gate recipe writes before evaluation.
constexpr MagState output_init(GateKind kind) noexcept {
  return kind == GateKind::NOR || kind == GateKind::NAND ? MagState::P : MagState::AP;
}

/// +1 for gates that switch P -> AP, -1 for gates that switch AP -> P.
constexpr double drive_polarity(GateKind kind) noexcept {
  return output_init(kind) == MagState::P ? 1.0 : -1.0;
}

/// The complementary recipe on the same inputs (NOR <-> OR, NAND <-> AND).
constexpr GateKind complement(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::NOR: return GateKind::OR;
    case GateKind::OR: return GateKind::NOR;
    case GateKind::NAND: return GateKind::AND;
    case GateKind::AND: return GateKind::NAND;
  }
  return kind;
}

/// The single-threshold gate that shares a device calibration with `kind`.
constexpr GateKind any_input_variant(GateKind kind) noexcept {
  return kind == GateKind::NAND ? GateKind::NOR : kind == GateKind::AND ? GateKind::OR : kind;
}

namespace defaults {
inline constexpr double v_rbl = 1.1;     ///< 2T-1R read bit-line drive, V
inline constexpr double v_in = 1.5;      ///< VGSOT input WBL/WBLB drive, V
inline constexpr double i_sot = 60e-6;   ///< VGSOT output write current, A
inline constexpr double pulse = 2e-9;    ///< evaluation pulse, s
}  // namespace defaults

/// Drive magnitudes. Polarity follows from the gate kind.
struct OperatingPoint {
  double v_drive = defaults::v_rbl;
  double i_sot = defaults::i_sot;
  double pulse = defaults::pulse;

  static OperatingPoint for_topology(Topology t) {
    return {t == Topology::TwoT1R ? defaults::v_rbl : defaults::v_in, defaults::i_sot,
            defaults::pulse};
  }
  bool operator==(const OperatingPoint&) const = default;
};

struct GateOp {
  GateKind kind = GateKind::NOR;
  std::vector<std::size_t> input_rows;
  std::size_t output_row = 0;
  std::size_t col = 0;
  double v_drive = defaults::v_rbl;
  double i_sot = defaults::i_sot;
  double pulse = defaults::pulse;
  MagState out_init = MagState::P;

  static GateOp make(GateKind kind, std::vector<std::size_t> input_rows, std::size_t output_row,
                     std::size_t col, const OperatingPoint& point);

  OperatingPoint operating_point() const { return {v_drive, i_sot, pulse}; }

  /// Throws std::invalid_argument for bad rows, mismatched init state or
  /// non-positive drives.
  void validate(const Array& array) const;
};

struct GateTrace {
  Solution pre{};                  ///< network during the pulse
  double v_gate = 0.0;             ///< voltage across the output MTJ oxide
  double channel_current = 0.0;    ///< signed current through the output channel
  double write_resistance = 0.0;   ///< output channel resistance
  double i_crit = 0.0;             ///< output threshold at v_gate
  bool switched = false;
  MagState output = MagState::P;
  std::vector<double> input_currents{};
  std::vector<DisturbVerdict> disturb{};
  bool disturb_ok = true;
  double energy = 0.0;
  Array post;
};

struct ExecOptions {
  SwitchModel switching;
  double uniform = 0.5;  ///< draw used only by a stochastic SwitchModel
};

/// Initializes the output, solves the selected network and applies the
/// threshold rule. Input cells are never modified; disturb is advisory.
GateTrace execute_gate(const Array& array, const GateOp& op, const ExecOptions& options = {});

/// V I t over the driven branches: read-path power for 2T-1R, divider
/// leakage plus i_sot^2 R_channel for VGSOT.
double gate_energy(const GateTrace& trace, const GateOp& op);

/// Input bit i of pattern `index` is bit i of the index.
std::vector<bool> pattern_bits(std::size_t index, std::size_t n_inputs);
/// Most significant input first, so pattern 1 of two inputs is "01".
std::string pattern_label(const std::vector<bool>& bits);

struct TruthRow {
  std::vector<bool> inputs;
  bool expected = false;
  bool output = false;
  double channel_current = 0.0;  ///< output channel current (2T-1R)
  double v_bl = 0.0;             ///< BL voltage (VGSOT)
  double i_crit = 0.0;           ///< effective output threshold
  double energy = 0.0;
  bool disturb_ok = true;
  double max_input_density = 0.0;  ///< A/m^2, worst input MTJ
};

struct TruthTable {
  GateKind kind = GateKind::NOR;
  Topology topology = Topology::TwoT1R;
  std::vector<TruthRow> rows;

  std::size_t mismatches() const;
};

/// Runs the gate at nominal parameters over every input pattern, using
/// rows 0..n-1 as inputs and row n as output of column 0.
TruthTable truth_table(const ArraySpec& spec, GateKind kind, std::size_t n_inputs,
                       const OperatingPoint& point);

/// Per-pattern observables at nominal parameters. `strength` orders the
/// patterns by how hard they push the output: |I| for 2T-1R, -I_c(V_BL) for VGSOT.
struct PatternProbe {
  std::vector<bool> inputs;
  bool must_switch = false;
  double channel_current = 0.0;
  double v_bl = 0.0;
  double i_crit = 0.0;
  double strength = 0.0;
};

std::vector<PatternProbe> probe_patterns(const ArraySpec& spec, GateKind kind,
                                         std::size_t n_inputs, double v_drive);

struct MarginReport {
  GateKind kind = GateKind::NOR;
  Topology topology = Topology::TwoT1R;
  std::size_t n_inputs = 0;
  /// 2T-1R: weakest must-switch current and strongest must-hold current.
  /// VGSOT: highest must-switch I_c and lowest must-hold I_c.
  double worst_switch = 0.0;
  double worst_hold = 0.0;
  double margin = 0.0;     ///< A; negative when the cases overlap
  double threshold = 0.0;  ///< midpoint between the two worst cases, A
  double relative = 0.0;   ///< margin / threshold
  std::size_t worst_switch_pattern = 0;
  std::size_t worst_hold_pattern = 0;
};

MarginReport margin_analysis(const ArraySpec& spec, GateKind kind, std::size_t n_inputs,
                             const OperatingPoint& point);

/// No threshold separates the must-switch from the must-hold patterns.
class Inseparable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Calibration {
  GateKind kind = GateKind::NOR;
  Topology topology = Topology::TwoT1R;
  std::size_t n_inputs = 0;
  double placement = 0.5;
  double Ic_cal = 1.0;      ///< device calibration factor to use
  OperatingPoint point;     ///< drive magnitudes to use
  double threshold = 0.0;   ///< 2T-1R: zero-bias I_c; VGSOT: i_sot
  /// Ic_cal that would put the default 60 uA write current at the same
  /// relative position (VGSOT only, 0 otherwise).
  double Ic_cal_for_default_i_sot = 0.0;

  ArraySpec apply(ArraySpec spec) const {
    spec.nominal.Ic_cal = Ic_cal;
    return spec;
  }
};

/// Places the decision threshold between the worst must-hold and the worst
/// must-switch pattern. `placement` is the fraction of the gap measured from
/// the must-hold side: 0.5 is the midpoint, small values sit close to the
/// must-hold case and large values close to the must-switch case.
///
/// 2T-1R NOR/OR: sets Ic_cal at `base.v_drive`. NAND/AND: reuses the NOR/OR
/// device and lowers v_drive. VGSOT NOR/OR: keeps the device, sets i_sot.
/// NAND/AND: reuses that i_sot and lowers v_drive. Throws Inseparable.
Calibration calibrate_gate(const ArraySpec& spec, GateKind kind, std::size_t n_inputs,
                           double placement, const OperatingPoint& base);

inline Calibration calibrate_gate(const ArraySpec& spec, GateKind kind, std::size_t n_inputs,
                                  double placement = 0.5) {
  return calibrate_gate(spec, kind, n_inputs, placement,
                        OperatingPoint::for_topology(spec.topology));
}

/// One op per line: `kind,col,in_rows,out_row[,v_drive,i_sot,pulse]`.
/// in_rows are separated by ';', '|' or spaces. Empty or missing optional
/// fields take `defaults`. Blank lines and '#' comments are skipped.
std::vector<GateOp> parse_op_file(std::istream& in, const OperatingPoint& defaults);

}  // namespace sotlogic

#endif  // SOTLOGIC_GATES_HPP
