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

#include "sotlogic/cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace sotlogic::cli {

namespace {

ReportBundle base_bundle(const RunConfig& cfg, const std::string& command) {
  ReportBundle b;
  b.metadata["tool"] = "sotlogic";
  b.metadata["version"] = kVersion;
  b.metadata["command"] = command;
  b.metadata["config_digest"] = cfg.digest();
  b.metadata["seed"] = std::to_string(cfg.mc.variation.seed);
  b.metadata["topology"] = to_string(cfg.topology);
  b.metadata["gate"] = to_string(cfg.gate);
  b.metadata["inputs"] = std::to_string(cfg.inputs);
  return b;
}

Cell flag(bool b) { return std::int64_t{b ? 1 : 0}; }
Cell count(std::size_t n) { return static_cast<std::int64_t>(n); }

std::vector<Column> input_columns(std::size_t n) {
  std::vector<Column> cols;
  for (std::size_t i = n; i-- > 0;) cols.push_back({"IN" + std::to_string(i), ColumnType::Integer});
  return cols;
}

void push_inputs(std::vector<Cell>& row, const std::vector<bool>& bits) {
  for (std::size_t i = bits.size(); i-- > 0;) row.push_back(flag(bits[i]));
}

struct Prepared {
  ArraySpec spec;
  OperatingPoint point;
  std::optional<Calibration> calibration;
};

Prepared prepare(const RunConfig& cfg, GateKind kind, std::size_t n) {
  Prepared p{cfg.array_spec(), cfg.operating_point(), std::nullopt};
  if (cfg.calibrate) {
    p.calibration = calibrate_gate(p.spec, kind, n, cfg.placement, p.point);
    p.spec = p.calibration->apply(p.spec);
    p.point = p.calibration->point;
  }
  return p;
}

Table calibration_table(const Calibration& c) {
  Table t{"calibration",
          {{"gate", ColumnType::Text},
           {"topology", ColumnType::Text},
           {"inputs", ColumnType::Integer},
           {"placement", ColumnType::Real},
           {"Ic_cal", ColumnType::Real},
           {"v_drive_V", ColumnType::Real},
           {"i_sot_A", ColumnType::Real},
           {"pulse_s", ColumnType::Real},
           {"threshold_A", ColumnType::Real},
           {"Ic_cal_for_default_i_sot", ColumnType::Real}},
          {}};
  t.add_row({std::string(to_string(c.kind)), std::string(to_string(c.topology)), count(c.n_inputs),
             c.placement, c.Ic_cal, c.point.v_drive, c.point.i_sot, c.point.pulse, c.threshold,
             c.Ic_cal_for_default_i_sot});
  return t;
}

Table truth_table_report(const TruthTable& tt, std::size_t n) {
  Table t{"truth_table", {{"pattern", ColumnType::Text}}, {}};
  for (auto& c : input_columns(n)) t.columns.push_back(c);
  for (const char* name : {"expected", "output", "correct"}) t.columns.push_back({name, ColumnType::Integer});
  for (const char* name : {"channel_current_A", "v_bl_V", "i_crit_A", "energy_J", "max_input_density_A_m2"})
    t.columns.push_back({name, ColumnType::Real});
  t.columns.push_back({"disturb_ok", ColumnType::Integer});
  for (const auto& r : tt.rows) {
    std::vector<Cell> row{pattern_label(r.inputs)};
    push_inputs(row, r.inputs);
    row.insert(row.end(), {flag(r.expected), flag(r.output), flag(r.output == r.expected), r.channel_current,
                           r.v_bl, r.i_crit, r.energy, r.max_input_density, flag(r.disturb_ok)});
    t.add_row(std::move(row));
  }
  return t;
}

CommandResult inseparable(CommandResult r, const Inseparable& e) {
  r.exit_code = kLogicFailure;
  r.message = e.what();
  r.bundle.metadata["error"] = e.what();
  return r;
}

}  // namespace

CommandResult cmd_truth_table(const RunConfig& cfg) {
  cfg.validate();
  CommandResult r;
  r.bundle = base_bundle(cfg, "truth-table");
  Prepared p;
  try {
    p = prepare(cfg, cfg.gate, cfg.inputs);
  } catch (const Inseparable& e) {
    return inseparable(std::move(r), e);
  }
  if (p.calibration) r.bundle.tables.push_back(calibration_table(*p.calibration));
  const TruthTable tt = truth_table(p.spec, cfg.gate, cfg.inputs, p.point);
  r.bundle.tables.push_back(truth_table_report(tt, cfg.inputs));
  const std::size_t bad = tt.mismatches();
  r.exit_code = bad == 0 ? kOk : kLogicFailure;
  r.message = std::to_string(tt.rows.size()) + " patterns, " + std::to_string(bad) + " mismatches";
  return r;
}

CommandResult cmd_gate(const RunConfig& cfg_in, const GateInputs& in) {
  RunConfig cfg = cfg_in;
  std::optional<Array> array;
  if (in.array_path) {
    std::ifstream is(*in.array_path);
    if (!is) throw ValidationError("array", "cannot open '" + *in.array_path + "'");
    std::stringstream buffer;
    buffer << is.rdbuf();
    std::istringstream probe(buffer.str());
    Array a = read_array_csv(probe, cfg.device());
    if (a.topology() != cfg.topology) {
      cfg.topology = a.topology();
      std::istringstream again(buffer.str());
      a = read_array_csv(again, cfg.device());
    }
    cfg.rows = a.rows();
    cfg.cols = a.cols();
    array = std::move(a);
  }
  cfg.validate();

  std::ifstream ops_stream(in.ops_path);
  if (!ops_stream) throw ValidationError("ops", "cannot open '" + in.ops_path + "'");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<GateOp> ops = parse_op_file(ops_stream, {nan, nan, nan});

  CommandResult r;
  r.bundle = base_bundle(cfg, "gate");

  ArraySpec spec = cfg.array_spec();
  spec.rows = cfg.rows;
  if (!array) {
    spec.rows = std::max<std::size_t>(spec.rows, 3);
    array.emplace(spec);
  }
  const OperatingPoint base = cfg.operating_point();

  if (cfg.calibrate) {
    Calibration device;
    try {
      device = calibrate_gate(cfg.array_spec(), any_input_variant(cfg.gate), cfg.inputs, cfg.placement, base);
    } catch (const Inseparable& e) {
      return inseparable(std::move(r), e);
    }
    spec = device.apply(array->spec());
    Array calibrated(spec);
    for (std::size_t row = 0; row < array->rows(); ++row)
      for (std::size_t col = 0; col < array->cols(); ++col) calibrated.set_state(row, col, array->state(row, col));
    array = std::move(calibrated);
    r.bundle.tables.push_back(calibration_table(device));
  }

  Table t{"trace",
          {{"op", ColumnType::Integer},        {"gate", ColumnType::Text},
           {"col", ColumnType::Integer},       {"input_rows", ColumnType::Text},
           {"output_row", ColumnType::Integer}, {"v_drive_V", ColumnType::Real},
           {"i_sot_A", ColumnType::Real},      {"pulse_s", ColumnType::Real},
           {"v_gate_V", ColumnType::Real},     {"channel_current_A", ColumnType::Real},
           {"i_crit_A", ColumnType::Real},     {"switched", ColumnType::Integer},
           {"output", ColumnType::Integer},    {"disturb_ok", ColumnType::Integer},
           {"energy_J", ColumnType::Real}},
          {}};

  for (std::size_t i = 0; i < ops.size(); ++i) {
    GateOp& op = ops[i];
    if (std::isnan(op.v_drive) || std::isnan(op.i_sot) || std::isnan(op.pulse)) {
      OperatingPoint fill = base;
      if (cfg.calibrate) {
        try {
          fill = calibrate_gate(array->spec(), op.kind, op.input_rows.size(), cfg.placement, base).point;
        } catch (const Inseparable& e) {
          return inseparable(std::move(r), e);
        }
      }
      if (std::isnan(op.v_drive)) op.v_drive = fill.v_drive;
      if (std::isnan(op.i_sot)) op.i_sot = fill.i_sot;
      if (std::isnan(op.pulse)) op.pulse = fill.pulse;
    }
    const GateTrace trace = execute_gate(*array, op);
    std::string rows;
    for (std::size_t k = 0; k < op.input_rows.size(); ++k) rows += (k ? ";" : "") + std::to_string(op.input_rows[k]);
    t.add_row({count(i), std::string(to_string(op.kind)), count(op.col), rows, count(op.output_row), op.v_drive,
               op.i_sot, op.pulse, trace.v_gate, trace.channel_current, trace.i_crit, flag(trace.switched),
               flag(logic_value(trace.output)), flag(trace.disturb_ok), trace.energy});
    array = trace.post;
  }
  r.bundle.tables.push_back(std::move(t));

  std::ostringstream final_state;
  write_array_csv(final_state, *array);
  r.files["gate_array.csv"] = final_state.str();
  r.message = std::to_string(ops.size()) + " operations executed";
  return r;
}

CommandResult cmd_mc(const RunConfig& cfg) {
  cfg.validate();
  CommandResult r;
  r.bundle = base_bundle(cfg, "mc");
  r.bundle.metadata["variation_model"] = "independent per-cell truncated Gaussian on t_ox, t_f, TMR0";
  Prepared p;
  try {
    p = prepare(cfg, cfg.gate, cfg.inputs);
  } catch (const Inseparable& e) {
    return inseparable(std::move(r), e);
  }
  if (p.calibration) r.bundle.tables.push_back(calibration_table(*p.calibration));

  std::vector<std::size_t> inputs;
  for (std::size_t i = 0; i < cfg.inputs; ++i) inputs.push_back(i);
  const GateOp op = GateOp::make(cfg.gate, inputs, cfg.inputs, 0, p.point);
  const MCResult mc = run_mc(p.spec, op, cfg.mc.n, cfg.mc.variation,
                             {cfg.mc.workers, SwitchModel{cfg.mc.switch_width}});
  const Histogram hist = current_histogram(mc, cfg.mc.bins, Observable::Drive);

  Table summary{"summary", {{"pattern", ColumnType::Text}}, {}};
  for (auto& c : input_columns(cfg.inputs)) summary.columns.push_back(c);
  summary.columns.insert(summary.columns.end(), {{"OUT", ColumnType::Integer},
                                                 {"trials", ColumnType::Integer},
                                                 {"successes", ColumnType::Integer},
                                                 {"success_rate", ColumnType::Real},
                                                 {"unintentional_switches", ColumnType::Integer}});
  Table trials{"trials",
               {{"pattern", ColumnType::Text},
                {"trial", ColumnType::Integer},
                {"channel_current_A", ColumnType::Real},
                {"i_crit_A", ColumnType::Real},
                {"v_bl_V", ColumnType::Real},
                {"drive_A", ColumnType::Real},
                {"energy_J", ColumnType::Real},
                {"switched", ColumnType::Integer},
                {"success", ColumnType::Integer}},
               {}};
  std::size_t hold_failures = 0;
  for (std::size_t pi = 0; pi < mc.patterns.size(); ++pi) {
    const PatternResult& pr = mc.patterns[pi];
    const std::size_t unintended = unintentional_switches(mc, pi);
    if (!pr.must_switch) hold_failures += pr.failures();
    std::vector<Cell> row{pr.label()};
    push_inputs(row, pr.inputs);
    row.insert(row.end(), {flag(pr.expected), count(pr.trials), count(pr.successes), pr.success_rate,
                           count(unintended)});
    summary.add_row(std::move(row));

    const auto drive = observable(mc, pi, Observable::Drive);
    for (std::size_t t = 0; t < pr.trials; ++t)
      trials.add_row({pr.label(), count(t), pr.channel_current[t], pr.i_crit[t], pr.v_bl[t], drive[t],
                      pr.energy[t], flag(pr.switched[t]), flag(pr.success[t])});
  }

  Table overlap{"overlap",
                {{"observable", ColumnType::Text},
                 {"decision_threshold_A", ColumnType::Real},
                 {"overlap_fraction", ColumnType::Real},
                 {"hold_failures", ColumnType::Integer}},
                {}};
  overlap.add_row({std::string(cfg.topology == Topology::TwoT1R ? "threshold_referred_current_A" : "i_crit_A"),
                   hist.threshold, hist.overlap, count(hold_failures)});

  HistogramTable h{"histogram", hist.edges, hist.labels, {}};
  for (const auto& c : hist.counts) {
    std::vector<std::int64_t> v(c.begin(), c.end());
    h.counts.push_back(std::move(v));
  }

  r.bundle.tables.push_back(std::move(summary));
  r.bundle.tables.push_back(std::move(overlap));
  r.bundle.tables.push_back(std::move(trials));
  r.bundle.histograms.push_back(std::move(h));

  std::ostringstream msg;
  for (const auto& pr : mc.patterns) msg << pr.label() << ": " << format_number(pr.success_rate) << "  ";
  msg << "overlap " << format_number(hist.overlap);
  r.message = msg.str();
  return r;
}

CommandResult cmd_margin(const RunConfig& cfg) {
  cfg.validate();
  CommandResult r;
  r.bundle = base_bundle(cfg, "margin");
  Prepared p{cfg.array_spec(), cfg.operating_point(), std::nullopt};
  try {
    p = prepare(cfg, cfg.gate, cfg.inputs);
  } catch (const Inseparable&) {
    r.bundle.metadata["calibration"] = "inseparable";
  }
  const MarginReport m = margin_analysis(p.spec, cfg.gate, cfg.inputs, p.point);
  Table t{"margin",
          {{"gate", ColumnType::Text},
           {"topology", ColumnType::Text},
           {"inputs", ColumnType::Integer},
           {"worst_switch_A", ColumnType::Real},
           {"worst_hold_A", ColumnType::Real},
           {"margin_A", ColumnType::Real},
           {"threshold_A", ColumnType::Real},
           {"relative_margin", ColumnType::Real},
           {"worst_switch_pattern", ColumnType::Text},
           {"worst_hold_pattern", ColumnType::Text}},
          {}};
  t.add_row({std::string(to_string(m.kind)), std::string(to_string(m.topology)), count(m.n_inputs), m.worst_switch,
             m.worst_hold, m.margin, m.threshold, m.relative,
             pattern_label(pattern_bits(m.worst_switch_pattern, cfg.inputs)),
             pattern_label(pattern_bits(m.worst_hold_pattern, cfg.inputs))});
  r.bundle.tables.push_back(std::move(t));

  Table probes{"patterns", {{"pattern", ColumnType::Text}}, {}};
  for (auto& c : input_columns(cfg.inputs)) probes.columns.push_back(c);
  probes.columns.insert(probes.columns.end(), {{"must_switch", ColumnType::Integer},
                                               {"channel_current_A", ColumnType::Real},
                                               {"v_bl_V", ColumnType::Real},
                                               {"i_crit_A", ColumnType::Real}});
  for (const auto& pr : probe_patterns(p.spec, cfg.gate, cfg.inputs, p.point.v_drive)) {
    std::vector<Cell> row{pattern_label(pr.inputs)};
    push_inputs(row, pr.inputs);
    row.insert(row.end(), {flag(pr.must_switch), pr.channel_current, pr.v_bl, pr.i_crit});
    probes.add_row(std::move(row));
  }
  r.bundle.tables.push_back(std::move(probes));
  r.message = "margin " + format_number(m.margin) + " A (relative " + format_number(m.relative) + ")";
  return r;
}

CommandResult cmd_calibrate(const RunConfig& cfg) {
  cfg.validate();
  CommandResult r;
  r.bundle = base_bundle(cfg, "calibrate");
  try {
    const Calibration c = calibrate_gate(cfg.array_spec(), cfg.gate, cfg.inputs, cfg.placement, cfg.operating_point());
    r.bundle.tables.push_back(calibration_table(c));
    r.message = "Ic_cal " + format_number(c.Ic_cal) + ", v_drive " + format_number(c.point.v_drive) +
                " V, i_sot " + format_number(c.point.i_sot) + " A";
  } catch (const Inseparable& e) {
    return inseparable(std::move(r), e);
  }
  return r;
}

CommandResult cmd_sweep(const RunConfig& cfg, const SweepSpec& sweep) {
  cfg.validate();
  const bool device_axis = is_device_key(sweep.axis);
  if (!device_axis && sweep.axis != "v_drive" && sweep.axis != "i_sot" && sweep.axis != "pulse")
    throw ValidationError("axis", "unknown sweep axis '" + sweep.axis + "'");
  if (sweep.points < 1) throw ValidationError("points", "need at least one point");

  CommandResult r;
  r.bundle = base_bundle(cfg, "sweep");
  r.bundle.metadata["axis"] = sweep.axis;
  Prepared base;
  try {
    base = prepare(cfg, cfg.gate, cfg.inputs);
  } catch (const Inseparable& e) {
    return inseparable(std::move(r), e);
  }
  if (base.calibration) r.bundle.tables.push_back(calibration_table(*base.calibration));

  Table t{"sweep",
          {{sweep.axis, ColumnType::Real},
           {"margin_A", ColumnType::Real},
           {"relative_margin", ColumnType::Real},
           {"threshold_A", ColumnType::Real},
           {"logic_ok", ColumnType::Integer},
           {"disturb_ok", ColumnType::Integer},
           {"feasible", ColumnType::Integer},
           {"max_input_density_A_m2", ColumnType::Real}},
          {}};
  Table boundaries{"boundaries",
                   {{"criterion", ColumnType::Text},
                    {"below", ColumnType::Real},
                    {"above", ColumnType::Real},
                    {"transition", ColumnType::Text}},
                   {}};

  std::optional<std::array<bool, 3>> last;
  double last_value = 0.0;
  for (std::size_t i = 0; i < sweep.points; ++i) {
    const double value = sweep.points == 1 ? sweep.from
                                           : sweep.from + (sweep.to - sweep.from) * static_cast<double>(i) /
                                                              static_cast<double>(sweep.points - 1);
    ArraySpec spec = base.spec;
    OperatingPoint point = base.point;
    if (device_axis) set_device_value(spec.nominal, sweep.axis, value);
    else if (sweep.axis == "v_drive") point.v_drive = value;
    else if (sweep.axis == "i_sot") point.i_sot = value;
    else point.pulse = value;
    spec.validate();

    const MarginReport m = margin_analysis(spec, cfg.gate, cfg.inputs, point);
    const TruthTable tt = truth_table(spec, cfg.gate, cfg.inputs, point);
    bool disturb_ok = true;
    double density = 0.0;
    for (const auto& row : tt.rows) {
      disturb_ok = disturb_ok && row.disturb_ok;
      density = std::max(density, row.max_input_density);
    }
    const bool logic_ok = tt.mismatches() == 0;
    const bool feasible = logic_ok && disturb_ok;
    t.add_row({value, m.margin, m.relative, m.threshold, flag(logic_ok), flag(disturb_ok), flag(feasible), density});
    const std::array<bool, 3> now{logic_ok, disturb_ok, feasible};
    static constexpr const char* kCriteria[] = {"logic", "disturb", "feasible"};
    for (std::size_t c = 0; last && c < now.size(); ++c)
      if ((*last)[c] != now[c])
        boundaries.add_row({std::string(kCriteria[c]), last_value, value,
                            std::string(now[c] ? "fail->pass" : "pass->fail")});
    last = now;
    last_value = value;
  }
  r.message = std::to_string(sweep.points) + " points, " + std::to_string(boundaries.rows.size()) +
              " boundary crossings";
  r.bundle.tables.push_back(std::move(t));
  r.bundle.tables.push_back(std::move(boundaries));
  return r;
}

void write_outputs(const RunConfig& cfg, const std::string& command, const CommandResult& result) {
  const std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  if (cfg.format == "json") {
    emit_json(result.bundle, dir / (command + ".json"));
  } else {
    emit_csv(result.bundle, dir, command);
  }
  for (const auto& [name, content] : result.files) {
    std::ofstream os(dir / name, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
    os << content;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stateful logic in SOT-MRAM arrays: gates, margins, Monte-Carlo", "sotlogic"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir, format, topology, gate;
  std::optional<std::size_t> inputs, n, workers;
  std::optional<double> v_drive, i_sot, pulse, r_on, ic_cal, placement;
  bool no_calibrate = false;
  std::vector<std::string> sets;

  app.add_option("--config", config_path, "Config file (default: $SOTLOGIC_CONFIG or built-in)");
  app.add_option("--seed", seed, "Monte-Carlo seed");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--topology", topology, "2t1r or vgsot");
  app.add_option("--gate", gate, "NOR, NAND, OR or AND");
  app.add_option("--inputs", inputs, "Number of gate inputs");
  app.add_option("--v-drive", v_drive, "Drive voltage magnitude, V");
  app.add_option("--i-sot", i_sot, "VGSOT write current magnitude, A");
  app.add_option("--pulse", pulse, "Pulse width, s");
  app.add_option("--R_on", r_on, "Transistor on-resistance, Ohm");
  app.add_option("--Ic_cal", ic_cal, "Critical current calibration factor");
  app.add_option("--placement", placement, "Threshold position in the margin, (0,1)");
  app.add_option("--n", n, "Monte-Carlo trials per pattern");
  app.add_option("--workers", workers, "Monte-Carlo worker threads (0 = all cores)");
  app.add_flag("--no-calibrate", no_calibrate, "Use the configured device and drives as given");
  app.add_option("--set", sets, "Override any config key, key=value (repeatable)");

  auto* tt = app.add_subcommand("truth-table", "Nominal truth table with analog observables");
  auto* gate_cmd = app.add_subcommand("gate", "Execute gate operations from an op file");
  GateInputs gate_inputs;
  gate_cmd->add_option("--ops", gate_inputs.ops_path, "Op file: kind,col,in_rows,out_row[,v_drive,i_sot,pulse]")
      ->required();
  gate_cmd->add_option("--array", gate_inputs.array_path, "Initial array state CSV");
  auto* mc = app.add_subcommand("mc", "Monte-Carlo process-variation campaign");
  auto* margin = app.add_subcommand("margin", "Worst-case margin between switching cases");
  auto* calibrate = app.add_subcommand("calibrate", "Place the switching threshold");
  auto* sweep_cmd = app.add_subcommand("sweep", "Margin and feasibility along one parameter");
  SweepSpec sweep;
  sweep_cmd->add_option("--axis", sweep.axis, "Parameter to sweep")->required();
  sweep_cmd->add_option("--from", sweep.from, "First value")->required();
  sweep_cmd->add_option("--to", sweep.to, "Last value")->required();
  sweep_cmd->add_option("--points", sweep.points, "Number of points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    RunConfig cfg;
    if (config_path.empty())
      if (const char* env = std::getenv(kConfigEnv); env && *env) config_path = env;
    if (!config_path.empty()) cfg = load_config_file(config_path);

    if (topology) cfg.topology = parse_topology(*topology);
    if (gate) cfg.gate = parse_gate_kind(*gate);
    if (inputs) cfg.inputs = *inputs;
    if (v_drive) cfg.v_drive = *v_drive;
    if (i_sot) cfg.i_sot = *i_sot;
    if (pulse) cfg.pulse = *pulse;
    if (r_on) cfg.device().R_on = *r_on;
    if (ic_cal) cfg.device().Ic_cal = *ic_cal;
    if (placement) cfg.placement = *placement;
    if (n) cfg.mc.n = *n;
    if (workers) cfg.mc.workers = *workers;
    if (seed) cfg.mc.variation.seed = *seed;
    if (no_calibrate) cfg.calibrate = false;
    if (out_dir) cfg.out_dir = *out_dir;
    if (format) cfg.format = *format;
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ValidationError(s, "--set expects key=value");
      set_key(cfg, "", s.substr(0, eq), s.substr(eq + 1));
    }

    std::string command;
    CommandResult result;
    if (tt->parsed()) {
      command = "truth-table";
      result = cmd_truth_table(cfg);
    } else if (gate_cmd->parsed()) {
      command = "gate";
      result = cmd_gate(cfg, gate_inputs);
    } else if (mc->parsed()) {
      command = "mc";
      result = cmd_mc(cfg);
    } else if (margin->parsed()) {
      command = "margin";
      result = cmd_margin(cfg);
    } else if (calibrate->parsed()) {
      command = "calibrate";
      result = cmd_calibrate(cfg);
    } else {
      command = "sweep";
      result = cmd_sweep(cfg, sweep);
    }
    write_outputs(cfg, command, result);
    (result.exit_code == kOk ? out : err) << command << ": " << result.message << '\n';
    return result.exit_code;
  } catch (const ValidationError& e) {
    err << "configuration error: " << e.what() << '\n';
  } catch (const Inseparable& e) {
    err << "error: " << e.what() << '\n';
    return kLogicFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kConfigError;
}

}  // namespace sotlogic::cli
