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
 * @file array.hpp
 * @brief 2T-1R and VGSOT array topologies and the networks a gate induces.
 *
 * A gate selects one column, a set of input rows and one output row.
 * Unselected cells are disconnected unless the spec carries a finite
 * off-resistance, in which case their leakage paths join the network and
 * the general nodal solver is used.
 */
#ifndef SOTLOGIC_ARRAY_HPP
#define SOTLOGIC_ARRAY_HPP

#include "sotlogic/device.hpp"
#include "sotlogic/network.hpp"

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sotlogic {

enum class Topology { TwoT1R, VGSOT };

/// An operation was requested on an array of the wrong kind.
class TopologyMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const char* to_string(Topology t) noexcept;
/// Accepts "2t1r", "2T-1R", "vgsot" (case-insensitive).
Topology parse_topology(const std::string& s);

struct CellState {
  MagState mag = MagState::AP;
  DeviceParams dev;

  bool operator==(const CellState&) const = default;
};

struct ArraySpec {
  Topology topology = Topology::TwoT1R;
  std::size_t rows = 4;
  std::size_t cols = 4;
  DeviceParams nominal;
  /// Off-resistance of an unselected access transistor. Infinite means the
  /// unselected cells are fully disconnected.
  double r_off = std::numeric_limits<double>::infinity();

  void validate() const;

  bool operator==(const ArraySpec&) const = default;
};

class Array {
 public:
  explicit Array(ArraySpec spec, MagState init = MagState::AP);

  const ArraySpec& spec() const noexcept { return spec_; }
  Topology topology() const noexcept { return spec_.topology; }
  std::size_t rows() const noexcept { return spec_.rows; }
  std::size_t cols() const noexcept { return spec_.cols; }

  const CellState& cell(std::size_t row, std::size_t col) const;
  CellState& cell(std::size_t row, std::size_t col);

  MagState state(std::size_t row, std::size_t col) const { return cell(row, col).mag; }
  void set_state(std::size_t row, std::size_t col, MagState s) { cell(row, col).mag = s; }

  bool operator==(const Array&) const = default;

 private:
  std::size_t index(std::size_t row, std::size_t col) const;

  ArraySpec spec_;
  std::vector<CellState> cells_;
};

/// Standard write; returns the updated snapshot. Throws std::out_of_range.
Array write_cell(Array array, std::size_t row, std::size_t col, MagState state);

using Solution = NetworkSolution<double>;

// Node and branch names shared by the closed forms and the netlist builders.
namespace net_names {
inline constexpr const char* drive = "drive";   ///< RBL (2T-1R) or input WBL/WBLB (VGSOT)
inline constexpr const char* shared = "shared";  ///< SL (2T-1R) or BL (VGSOT)
inline constexpr const char* output = "out";    ///< output channel (2T-1R) or output MTJ (VGSOT)
std::string input(std::size_t i);
}  // namespace net_names

/// Read-current configuration of the 2T-1R array, in closed form.
///
/// Each input contributes an (R_on + R_MTJ) branch from the RBL to the
/// shared SL; the summed current leaves through the output channel and its
/// write transistor to the grounded WBL.
Solution solve_2t1r_read(std::span<const CellState> cells_in, const CellState& cell_out,
                         double v_rbl);

/// Divider configuration of the VGSOT array, in closed form.
///
/// Input MTJs in parallel from the driven input channels to the floating BL,
/// output MTJ from the BL to its grounded channel.
Solution solve_vgsot_divider(std::span<const CellState> cells_in, const CellState& cell_out,
                             double v_in);

/// Array-level forms of the closed-form solvers. The selected cells share
/// `col` by construction; throw TopologyMismatch on the wrong array kind.
Solution solve_2t1r_read(const Array& array, std::span<const std::size_t> input_rows,
                         std::size_t output_row, std::size_t col, double v_rbl);
Solution solve_vgsot_divider(const Array& array, std::span<const std::size_t> input_rows,
                             std::size_t output_row, std::size_t col, double v_in);

/// The same configurations as an explicit netlist, including leakage
/// through unselected cells of the column when `spec().r_off` is finite.
Netlist<double> build_gate_netlist(const Array& array, std::span<const std::size_t> input_rows,
                                   std::size_t output_row, std::size_t col, double v_drive);

/// Solves the network a gate selects. Closed form when unselected cells are
/// disconnected, nodal analysis otherwise. Throws std::invalid_argument on
/// bad addresses.
Solution solve_gate_network(const Array& array, std::span<const std::size_t> input_rows,
                            std::size_t output_row, std::size_t col, double v_drive);

/// Array state as CSV. First line `rows,cols,topology`, second the values,
/// then one line per row of 0/1 (AP = 0, P = 1).
void write_array_csv(std::ostream& out, const Array& array);
Array read_array_csv(std::istream& in, const DeviceParams& nominal);

}  // namespace sotlogic

#endif  // SOTLOGIC_ARRAY_HPP
