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

#include "sotlogic/array.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sotlogic {

const char* to_string(Topology t) noexcept { return t == Topology::TwoT1R ? "2t1r" : "vgsot"; }

Topology parse_topology(const std::string& s) {
  std::string k;
  for (char c : s)
    if (c != '-' && c != '_') k += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (k == "2t1r") return Topology::TwoT1R;
  if (k == "vgsot") return Topology::VGSOT;
  throw ValidationError("topology", "unknown topology '" + s + "'");
}

void ArraySpec::validate() const {
  if (rows < 3) throw ValidationError("rows", "need at least 3 rows");
  if (cols < 1) throw ValidationError("cols", "need at least 1 column");
  if (!(r_off > 0.0)) throw ValidationError("R_off", "must be positive");
  nominal.validate();
}

Array::Array(ArraySpec spec, MagState init) : spec_(std::move(spec)) {
  spec_.validate();
  cells_.assign(spec_.rows * spec_.cols, CellState{init, spec_.nominal});
}

std::size_t Array::index(std::size_t row, std::size_t col) const {
  if (row >= spec_.rows || col >= spec_.cols)
    throw std::out_of_range("cell (" + std::to_string(row) + "," + std::to_string(col) +
                            ") outside " + std::to_string(spec_.rows) + "x" +
                            std::to_string(spec_.cols) + " array");
  return row * spec_.cols + col;
}

const CellState& Array::cell(std::size_t row, std::size_t col) const {
  return cells_[index(row, col)];
}

CellState& Array::cell(std::size_t row, std::size_t col) { return cells_[index(row, col)]; }

Array write_cell(Array array, std::size_t row, std::size_t col, MagState state) {
  array.set_state(row, col, state);
  return array;
}

std::string net_names::input(std::size_t i) { return "in" + std::to_string(i); }

namespace {

struct Nodes {
  std::size_t drive;
  std::size_t shared;
};

Solution skeleton(const Nodes& nodes, double v_drive, double v_shared) {
  Solution sol;
  sol.node_names = {"gnd", net_names::drive, net_names::shared};
  sol.node_voltages.resize(3);
  sol.node_voltages << 0.0, v_drive, v_shared;
  sol.fixed_nodes = {0, nodes.drive};
  return sol;
}

void require_inputs(std::span<const CellState> cells_in) {
  if (cells_in.empty()) throw std::invalid_argument("gate needs at least one input");
}

}  // namespace

Solution solve_2t1r_read(std::span<const CellState> cells_in, const CellState& cell_out,
                         double v_rbl) {
  require_inputs(cells_in);
  std::vector<double> r_in;
  double g_in = 0.0;
  for (const auto& c : cells_in) {
    r_in.push_back(c.dev.R_on + mtj_resistance(c.dev, c.mag));
    g_in += 1.0 / r_in.back();
  }
  const double r_out = cell_out.dev.R_on + channel_resistance(cell_out.dev);
  const double i_total = v_rbl / (1.0 / g_in + r_out);
  const double v_sl = i_total * r_out;

  const Nodes nodes{1, 2};
  Solution sol = skeleton(nodes, v_rbl, v_sl);
  for (std::size_t i = 0; i < cells_in.size(); ++i)
    sol.branches.push_back(
        {net_names::input(i), nodes.drive, nodes.shared, r_in[i], (v_rbl - v_sl) / r_in[i]});
  sol.branches.push_back({net_names::output, nodes.shared, 0, r_out, i_total});
  return sol;
}

Solution solve_vgsot_divider(std::span<const CellState> cells_in, const CellState& cell_out,
                             double v_in) {
  require_inputs(cells_in);
  std::vector<double> r_in;
  double g_in = 0.0;
  for (const auto& c : cells_in) {
    r_in.push_back(mtj_resistance(c.dev, c.mag));
    g_in += 1.0 / r_in.back();
  }
  const double r_out = mtj_resistance(cell_out.dev, cell_out.mag);
  const double v_bl = v_in * r_out / (1.0 / g_in + r_out);

  const Nodes nodes{1, 2};
  Solution sol = skeleton(nodes, v_in, v_bl);
  for (std::size_t i = 0; i < cells_in.size(); ++i)
    sol.branches.push_back(
        {net_names::input(i), nodes.drive, nodes.shared, r_in[i], (v_in - v_bl) / r_in[i]});
  sol.branches.push_back({net_names::output, nodes.shared, 0, r_out, v_bl / r_out});
  return sol;
}

namespace {

void check_selection(const Array& array, std::span<const std::size_t> input_rows,
                     std::size_t output_row, std::size_t col) {
  if (input_rows.empty()) throw std::invalid_argument("gate needs at least one input row");
  if (col >= array.cols()) throw std::invalid_argument("column " + std::to_string(col) + " out of range");
  if (output_row >= array.rows())
    throw std::invalid_argument("output row " + std::to_string(output_row) + " out of range");
  std::vector<std::size_t> seen;
  for (std::size_t r : input_rows) {
    if (r >= array.rows()) throw std::invalid_argument("input row " + std::to_string(r) + " out of range");
    if (r == output_row) throw std::invalid_argument("input row equals output row");
    if (std::find(seen.begin(), seen.end(), r) != seen.end())
      throw std::invalid_argument("duplicate input row " + std::to_string(r));
    seen.push_back(r);
  }
}

}  // namespace

Netlist<double> build_gate_netlist(const Array& array, std::span<const std::size_t> input_rows,
                                   std::size_t output_row, std::size_t col, double v_drive) {
  check_selection(array, input_rows, output_row, col);
  Netlist<double> net;
  const std::size_t drive = net.add_node(net_names::drive);
  const std::size_t shared = net.add_node(net_names::shared);
  net.add_source(drive, v_drive, "V");

  const bool two_t = array.topology() == Topology::TwoT1R;
  for (std::size_t i = 0; i < input_rows.size(); ++i) {
    const auto& c = array.cell(input_rows[i], col);
    const double r = mtj_resistance(c.dev, c.mag) + (two_t ? c.dev.R_on : 0.0);
    net.add_resistor(drive, shared, r, net_names::input(i));
  }
  const auto& out = array.cell(output_row, col);
  const double r_out = two_t ? out.dev.R_on + channel_resistance(out.dev)
                             : mtj_resistance(out.dev, out.mag);
  net.add_resistor(shared, Netlist<double>::ground, r_out, net_names::output);

  const double r_off = array.spec().r_off;
  if (std::isfinite(r_off)) {
    for (std::size_t row = 0; row < array.rows(); ++row) {
      if (row == output_row ||
          std::find(input_rows.begin(), input_rows.end(), row) != input_rows.end())
        continue;
      const auto& c = array.cell(row, col);
      const std::string tag = "leak" + std::to_string(row);
      if (two_t) {
        // Read transistor off between RBL and SL, write transistor off to WBL.
        net.add_resistor(drive, shared, r_off + mtj_resistance(c.dev, c.mag), tag + "_read");
        net.add_resistor(shared, Netlist<double>::ground, r_off + channel_resistance(c.dev),
                         tag + "_write");
      } else {
        net.add_resistor(shared, Netlist<double>::ground, r_off + mtj_resistance(c.dev, c.mag),
                         tag);
      }
    }
  }
  return net;
}

namespace {

std::vector<CellState> gather(const Array& array, std::span<const std::size_t> rows,
                              std::size_t col) {
  std::vector<CellState> cells;
  cells.reserve(rows.size());
  for (std::size_t r : rows) cells.push_back(array.cell(r, col));
  return cells;
}

}  // namespace

Solution solve_2t1r_read(const Array& array, std::span<const std::size_t> input_rows,
                         std::size_t output_row, std::size_t col, double v_rbl) {
  if (array.topology() != Topology::TwoT1R)
    throw TopologyMismatch("read-current gate needs a 2T-1R array");
  check_selection(array, input_rows, output_row, col);
  return solve_2t1r_read(gather(array, input_rows, col), array.cell(output_row, col), v_rbl);
}

Solution solve_vgsot_divider(const Array& array, std::span<const std::size_t> input_rows,
                             std::size_t output_row, std::size_t col, double v_in) {
  if (array.topology() != Topology::VGSOT)
    throw TopologyMismatch("divider gate needs a VGSOT array");
  check_selection(array, input_rows, output_row, col);
  return solve_vgsot_divider(gather(array, input_rows, col), array.cell(output_row, col), v_in);
}

Solution solve_gate_network(const Array& array, std::span<const std::size_t> input_rows,
                            std::size_t output_row, std::size_t col, double v_drive) {
  if (std::isfinite(array.spec().r_off))
    return solve_general(build_gate_netlist(array, input_rows, output_row, col, v_drive));

  return array.topology() == Topology::TwoT1R
             ? solve_2t1r_read(array, input_rows, output_row, col, v_drive)
             : solve_vgsot_divider(array, input_rows, output_row, col, v_drive);
}

void write_array_csv(std::ostream& out, const Array& array) {
  out << "rows,cols,topology\n"
      << array.rows() << ',' << array.cols() << ',' << to_string(array.topology()) << '\n';
  for (std::size_t r = 0; r < array.rows(); ++r) {
    for (std::size_t c = 0; c < array.cols(); ++c) {
      if (c) out << ',';
      out << (logic_value(array.state(r, c)) ? '1' : '0');
    }
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) {
    while (!f.empty() && std::isspace(static_cast<unsigned char>(f.back()))) f.pop_back();
    std::size_t b = 0;
    while (b < f.size() && std::isspace(static_cast<unsigned char>(f[b]))) ++b;
    fields.push_back(f.substr(b));
  }
  return fields;
}

std::size_t parse_count(const std::string& s, const char* what) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
  return v;
}

}  // namespace

Array read_array_csv(std::istream& in, const DeviceParams& nominal) {
  std::string line;
  if (!std::getline(in, line) || split_csv(line) != std::vector<std::string>{"rows", "cols", "topology"})
    throw std::invalid_argument("array CSV must start with 'rows,cols,topology'");
  if (!std::getline(in, line)) throw std::invalid_argument("array CSV missing dimensions");
  auto dims = split_csv(line);
  if (dims.size() != 3) throw std::invalid_argument("array CSV dimension line needs 3 fields");

  ArraySpec spec;
  spec.rows = parse_count(dims[0], "rows");
  spec.cols = parse_count(dims[1], "cols");
  spec.topology = parse_topology(dims[2]);
  spec.nominal = nominal;
  Array array(spec);

  for (std::size_t r = 0; r < spec.rows; ++r) {
    if (!std::getline(in, line)) throw std::invalid_argument("array CSV has too few rows");
    auto cells = split_csv(line);
    if (cells.size() != spec.cols)
      throw std::invalid_argument("array CSV row " + std::to_string(r) + " has wrong width");
    for (std::size_t c = 0; c < spec.cols; ++c) {
      if (cells[c] != "0" && cells[c] != "1")
        throw std::invalid_argument("array CSV cell must be 0 or 1, got '" + cells[c] + "'");
      array.set_state(r, c, from_logic(cells[c] == "1"));
    }
  }
  return array;
}

}  // namespace sotlogic
