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

#include "sotlogic/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

namespace sotlogic {

const char* to_string(GateKind k) noexcept {
  switch (k) {
    case GateKind::NOR: return "NOR";
    case GateKind::NAND: return "NAND";
    case GateKind::OR: return "OR";
    case GateKind::AND: return "AND";
  }
  return "?";
}

GateKind parse_gate_kind(const std::string& s) {
  std::string k;
  for (char c : s) k += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (k == "NOR") return GateKind::NOR;
  if (k == "NAND") return GateKind::NAND;
  if (k == "OR") return GateKind::OR;
  if (k == "AND") return GateKind::AND;
  throw ValidationError("gate", "unknown gate kind '" + s + "'");
}

bool evaluate(GateKind kind, const std::vector<bool>& inputs) {
  const bool any = std::any_of(inputs.begin(), inputs.end(), [](bool b) { return b; });
  const bool all = std::all_of(inputs.begin(), inputs.end(), [](bool b) { return b; });
  switch (kind) {
    case GateKind::NOR: return !any;
    case GateKind::NAND: return !all;
    case GateKind::OR: return any;
    case GateKind::AND: return all;
  }
  return false;
}

GateOp GateOp::make(GateKind kind, std::vector<std::size_t> input_rows, std::size_t output_row,
                    std::size_t col, const OperatingPoint& point) {
  GateOp op;
  op.kind = kind;
  op.input_rows = std::move(input_rows);
  op.output_row = output_row;
  op.col = col;
  op.v_drive = point.v_drive;
  op.i_sot = point.i_sot;
  op.pulse = point.pulse;
  op.out_init = output_init(kind);
  return op;
}

void GateOp::validate(const Array& array) const {
  if (input_rows.empty()) throw std::invalid_argument("gate needs at least one input row");
  if (output_row >= array.rows()) throw std::invalid_argument("output row out of range");
  if (col >= array.cols()) throw std::invalid_argument("column out of range");
  for (std::size_t i = 0; i < input_rows.size(); ++i) {
    if (input_rows[i] >= array.rows()) throw std::invalid_argument("input row out of range");
    if (input_rows[i] == output_row) throw std::invalid_argument("input row equals output row");
    for (std::size_t j = 0; j < i; ++j)
      if (input_rows[j] == input_rows[i]) throw std::invalid_argument("duplicate input row");
  }
  if (out_init != output_init(kind))
    throw std::invalid_argument(std::string(to_string(kind)) + " must initialize the output to " +
                                to_string(output_init(kind)));
  if (!(v_drive > 0.0) || !std::isfinite(v_drive))
    throw std::invalid_argument("v_drive must be a positive magnitude");
  if (!(i_sot >= 0.0) || !std::isfinite(i_sot)) throw std::invalid_argument("i_sot must be >= 0");
  if (!(pulse >= 0.0) || !std::isfinite(pulse)) throw std::invalid_argument("pulse must be >= 0");
}

GateTrace execute_gate(const Array& array, const GateOp& op, const ExecOptions& options) {
  op.validate(array);

  Array work = array;
  work.set_state(op.output_row, op.col, op.out_init);
  const CellState& out = work.cell(op.output_row, op.col);
  const double polarity = drive_polarity(op.kind);

  GateTrace trace{.post = work};
  double applied = 0.0;
  if (array.topology() == Topology::TwoT1R) {
    trace.pre = solve_gate_network(work, op.input_rows, op.output_row, op.col, polarity * op.v_drive);
    applied = trace.pre.branch(net_names::output).current;
    trace.v_gate = 0.0;
  } else {
    trace.pre = solve_gate_network(work, op.input_rows, op.output_row, op.col, op.v_drive);
    trace.v_gate = trace.pre.voltage(net_names::shared);
    applied = polarity * op.i_sot;
  }
  trace.channel_current = applied;
  trace.write_resistance = channel_resistance(out.dev);
  trace.i_crit = critical_sot_current(out.dev, trace.v_gate);

  const auto next = switch_decision(applied, trace.i_crit, op.out_init, options.switching,
                                    options.uniform);
  trace.switched = next.has_value();
  trace.output = next.value_or(op.out_init);
  trace.post.set_state(op.output_row, op.col, trace.output);

  for (std::size_t i = 0; i < op.input_rows.size(); ++i) {
    const double current = trace.pre.branch(net_names::input(i)).current;
    trace.input_currents.push_back(current);
    trace.disturb.push_back(check_read_disturb(work.cell(op.input_rows[i], op.col).dev, current));
    trace.disturb_ok = trace.disturb_ok && trace.disturb.back().pass;
  }
  trace.energy = gate_energy(trace, op);
  return trace;
}

double gate_energy(const GateTrace& trace, const GateOp& op) {
  const auto drive = trace.pre.find_node(net_names::drive);
  if (!drive) return 0.0;
  const double v = trace.pre.node_voltages(static_cast<Eigen::Index>(*drive));
  double power = std::abs(v * trace.pre.outflow(*drive));
  if (trace.post.topology() == Topology::VGSOT)
    power += op.i_sot * op.i_sot * trace.write_resistance;
  return power * op.pulse;
}

std::vector<bool> pattern_bits(std::size_t index, std::size_t n_inputs) {
  std::vector<bool> bits(n_inputs);
  for (std::size_t i = 0; i < n_inputs; ++i) bits[i] = ((index >> i) & 1U) != 0;
  return bits;
}

std::string pattern_label(const std::vector<bool>& bits) {
  std::string s;
  for (std::size_t i = bits.size(); i-- > 0;) s += bits[i] ? '1' : '0';
  return s;
}

std::size_t TruthTable::mismatches() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const TruthRow& r) { return r.output != r.expected; }));
}

namespace {

struct Layout {
  Array array;
  std::vector<std::size_t> inputs;
  std::size_t output;
};

Layout single_gate_layout(const ArraySpec& spec, std::size_t n_inputs) {
  if (n_inputs < 1) throw std::invalid_argument("gate needs at least one input");
  ArraySpec s = spec;
  s.rows = std::max(s.rows, n_inputs + 1);
  Layout l{Array(s), {}, n_inputs};
  for (std::size_t i = 0; i < n_inputs; ++i) l.inputs.push_back(i);
  return l;
}

std::size_t pattern_count(std::size_t n_inputs) {
  if (n_inputs >= 20) throw std::invalid_argument("too many gate inputs");
  return std::size_t{1} << n_inputs;
}

}  // namespace

TruthTable truth_table(const ArraySpec& spec, GateKind kind, std::size_t n_inputs,
                       const OperatingPoint& point) {
  Layout layout = single_gate_layout(spec, n_inputs);
  const GateOp op = GateOp::make(kind, layout.inputs, layout.output, 0, point);

  TruthTable table{kind, spec.topology, {}};
  for (std::size_t p = 0; p < pattern_count(n_inputs); ++p) {
    const auto bits = pattern_bits(p, n_inputs);
    for (std::size_t i = 0; i < n_inputs; ++i) layout.array.set_state(i, 0, from_logic(bits[i]));
    const GateTrace trace = execute_gate(layout.array, op);

    TruthRow row;
    row.inputs = bits;
    row.expected = evaluate(kind, bits);
    row.output = logic_value(trace.output);
    row.channel_current = trace.channel_current;
    row.v_bl = spec.topology == Topology::VGSOT ? trace.v_gate : 0.0;
    row.i_crit = trace.i_crit;
    row.energy = trace.energy;
    row.disturb_ok = trace.disturb_ok;
    for (const auto& d : trace.disturb)
      row.max_input_density = std::max(row.max_input_density, d.current_density);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<PatternProbe> probe_patterns(const ArraySpec& spec, GateKind kind,
                                         std::size_t n_inputs, double v_drive) {
  Layout layout = single_gate_layout(spec, n_inputs);
  OperatingPoint point = OperatingPoint::for_topology(spec.topology);
  point.v_drive = v_drive;
  const GateOp op = GateOp::make(kind, layout.inputs, layout.output, 0, point);
  const bool init = logic_value(output_init(kind));

  std::vector<PatternProbe> probes;
  for (std::size_t p = 0; p < pattern_count(n_inputs); ++p) {
    PatternProbe probe;
    probe.inputs = pattern_bits(p, n_inputs);
    for (std::size_t i = 0; i < n_inputs; ++i)
      layout.array.set_state(i, 0, from_logic(probe.inputs[i]));
    const GateTrace trace = execute_gate(layout.array, op);
    probe.must_switch = evaluate(kind, probe.inputs) != init;
    probe.i_crit = trace.i_crit;
    if (spec.topology == Topology::TwoT1R) {
      probe.channel_current = trace.channel_current;
      probe.strength = std::abs(trace.channel_current);
    } else {
      probe.v_bl = trace.v_gate;
      probe.strength = -trace.i_crit;
    }
    probes.push_back(std::move(probe));
  }
  return probes;
}

namespace {

struct Gap {
  double hold = -std::numeric_limits<double>::infinity();   ///< strongest must-hold
  double sw = std::numeric_limits<double>::infinity();      ///< weakest must-switch
  std::size_t hold_pattern = 0;
  std::size_t switch_pattern = 0;
};

Gap gap_of(const std::vector<PatternProbe>& probes) {
  Gap g;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const auto& pr = probes[p];
    if (pr.must_switch && pr.strength < g.sw) {
      g.sw = pr.strength;
      g.switch_pattern = p;
    }
    if (!pr.must_switch && pr.strength > g.hold) {
      g.hold = pr.strength;
      g.hold_pattern = p;
    }
  }
  return g;
}

}  // namespace

MarginReport margin_analysis(const ArraySpec& spec, GateKind kind, std::size_t n_inputs,
                             const OperatingPoint& point) {
  const Gap g = gap_of(probe_patterns(spec, kind, n_inputs, point.v_drive));
  MarginReport r;
  r.kind = kind;
  r.topology = spec.topology;
  r.n_inputs = n_inputs;
  r.worst_switch_pattern = g.switch_pattern;
  r.worst_hold_pattern = g.hold_pattern;
  // Both topologies report positive currents; VGSOT strengths are -I_c.
  const double sign = spec.topology == Topology::TwoT1R ? 1.0 : -1.0;
  r.worst_switch = sign * g.sw;
  r.worst_hold = sign * g.hold;
  r.margin = g.sw - g.hold;
  r.threshold = 0.5 * (r.worst_switch + r.worst_hold);
  r.relative = r.threshold != 0.0 ? r.margin / r.threshold : 0.0;
  return r;
}

namespace {

void require_separable(const Gap& g, GateKind kind, std::size_t n_inputs, const char* where) {
  if (!(g.sw > g.hold))
    throw Inseparable(std::string("inseparable: no threshold realizes ") + to_string(kind) + " with " +
                      std::to_string(n_inputs) + " inputs (" + where + ")");
}

double place(const Gap& g, double placement) { return g.hold + placement * (g.sw - g.hold); }

}  // namespace

Calibration calibrate_gate(const ArraySpec& spec, GateKind kind, std::size_t n_inputs,
                           double placement, const OperatingPoint& base) {
  if (!(placement > 0.0 && placement < 1.0))
    throw ValidationError("placement", "must lie strictly between 0 and 1");
  if (!(base.v_drive > 0.0)) throw ValidationError("v_drive", "must be positive");
  spec.nominal.validate();

  Calibration cal;
  cal.kind = kind;
  cal.topology = spec.topology;
  cal.n_inputs = n_inputs;
  cal.placement = placement;
  cal.point = base;
  cal.Ic_cal = spec.nominal.Ic_cal;

  const GateKind base_kind = any_input_variant(kind);
  const bool lowered = base_kind != kind;
  const Gap g = gap_of(probe_patterns(spec, base_kind, n_inputs, base.v_drive));
  require_separable(g, base_kind, n_inputs, "nominal drive");

  if (spec.topology == Topology::TwoT1R) {
    DeviceParams raw = spec.nominal;
    raw.Ic_cal = 1.0;
    const double ic_raw = critical_sot_current(raw, 0.0);
    if (!(ic_raw > 0.0)) throw Inseparable("inseparable: the zero-bias switching barrier vanishes");
    cal.threshold = place(g, placement);
    cal.Ic_cal = cal.threshold / ic_raw;
    if (lowered) {
      // Currents are linear in the drive, so probe at 1 V and rescale.
      const Gap unit = gap_of(probe_patterns(spec, kind, n_inputs, 1.0));
      require_separable(unit, kind, n_inputs, "unit drive");
      cal.point.v_drive = cal.threshold / place(unit, placement);
    }
    return cal;
  }

  cal.point.i_sot = -place(g, placement);
  cal.threshold = cal.point.i_sot;
  cal.Ic_cal_for_default_i_sot = spec.nominal.Ic_cal * defaults::i_sot / cal.point.i_sot;
  if (lowered) {
    auto excess = [&](double v) {
      return place(gap_of(probe_patterns(spec, kind, n_inputs, v)), placement) + cal.point.i_sot;
    };
    double lo = 1e-6 * base.v_drive;
    double hi = base.v_drive;
    if (excess(lo) > 0.0 || excess(hi) < 0.0)
      throw Inseparable(std::string("inseparable: no input drive realizes ") + to_string(kind));
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (excess(mid) < 0.0 ? lo : hi) = mid;
    }
    cal.point.v_drive = 0.5 * (lo + hi);
    const Gap at = gap_of(probe_patterns(spec, kind, n_inputs, cal.point.v_drive));
    require_separable(at, kind, n_inputs, "lowered drive");
    if (!(at.sw >= -cal.point.i_sot && at.hold < -cal.point.i_sot))
      throw Inseparable(std::string("inseparable: lowered drive does not realize ") + to_string(kind));
  }
  return cal;
}

namespace {

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  return s.substr(b);
}

std::size_t to_index(const std::string& s, std::size_t line) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size() || s.front() == '-')
    throw std::invalid_argument("op file line " + std::to_string(line) + ": bad index '" + s + "'");
  return v;
}

double to_number(const std::string& s, std::size_t line) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size())
    throw std::invalid_argument("op file line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

}  // namespace

std::vector<GateOp> parse_op_file(std::istream& in, const OperatingPoint& defaults) {
  std::vector<GateOp> ops;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;

    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(trim(field));
    if (f.size() < 4 || f.size() > 7)
      throw std::invalid_argument("op file line " + std::to_string(lineno) +
                                  ": expected kind,col,in_rows,out_row[,v_drive,i_sot,pulse]");

    std::vector<std::size_t> inputs;
    std::string rows = f[2];
    std::replace(rows.begin(), rows.end(), ';', ' ');
    std::replace(rows.begin(), rows.end(), '|', ' ');
    std::stringstream rs(rows);
    std::string tok;
    while (rs >> tok) inputs.push_back(to_index(tok, lineno));

    OperatingPoint point = defaults;
    if (f.size() > 4 && !f[4].empty()) point.v_drive = to_number(f[4], lineno);
    if (f.size() > 5 && !f[5].empty()) point.i_sot = to_number(f[5], lineno);
    if (f.size() > 6 && !f[6].empty()) point.pulse = to_number(f[6], lineno);

    ops.push_back(GateOp::make(parse_gate_kind(f[0]), std::move(inputs), to_index(f[3], lineno),
                               to_index(f[1], lineno), point));
  }
  return ops;
}

}  // namespace sotlogic
