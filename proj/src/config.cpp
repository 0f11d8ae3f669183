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

#include "sotlogic/config.hpp"

#include "sotlogic/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace sotlogic {

namespace {

struct DeviceField {
  const char* key;
  double DeviceParams::*member;
  double scale;  ///< file value * scale = stored SI value
};

constexpr DeviceField kDeviceFields[] = {
    {"D", &DeviceParams::D, 1.0},
    {"t_f", &DeviceParams::t_f, 1.0},
    {"t_ox", &DeviceParams::t_ox, 1.0},
    {"Ms", &DeviceParams::Ms, 1.0},
    {"Ki0", &DeviceParams::Ki0, 1.0},
    {"alpha", &DeviceParams::alpha, 1.0},
    {"P", &DeviceParams::P, 1.0},
    {"RA", &DeviceParams::RA, 1.0},
    {"TMR0", &DeviceParams::TMR0, 1.0},
    {"beta", &DeviceParams::beta, 1.0},
    {"theta_SH", &DeviceParams::theta_SH, 1.0},
    {"H_EX_Oe", &DeviceParams::H_EX, constants::oersted},
    {"L", &DeviceParams::L, 1.0},
    {"W", &DeviceParams::W, 1.0},
    {"T", &DeviceParams::T, 1.0},
    {"rho_SOT", &DeviceParams::rho_SOT, 1.0},
    {"R_on", &DeviceParams::R_on, 1.0},
    {"Ic_cal", &DeviceParams::Ic_cal, 1.0},
    {"J_stt_crit", &DeviceParams::J_stt_crit, 1.0},
};

const DeviceField* find_field(const std::string& key) {
  for (const auto& f : kDeviceFields)
    if (key == f.key) return &f;
  return nullptr;
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ValidationError(key, "expected a number, got '" + text + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ValidationError(key, "expected a non-negative integer, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  std::string s;
  for (char c : trim(text)) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ValidationError(key, "expected true/false, got '" + text + "'");
}

std::string num(double v) { return format_number(v); }

void set_run_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "topology") cfg.topology = parse_topology(trim(value));
  else if (key == "gate") cfg.gate = parse_gate_kind(trim(value));
  else if (key == "inputs") cfg.inputs = parse_u64(key, value);
  else if (key == "rows") cfg.rows = parse_u64(key, value);
  else if (key == "cols") cfg.cols = parse_u64(key, value);
  else if (key == "R_off") cfg.r_off = parse_double(key, value);
  else if (key == "v_drive") cfg.v_drive = parse_double(key, value);
  else if (key == "i_sot") cfg.i_sot = parse_double(key, value);
  else if (key == "pulse") cfg.pulse = parse_double(key, value);
  else if (key == "calibrate") cfg.calibrate = parse_bool(key, value);
  else if (key == "placement") cfg.placement = parse_double(key, value);
  else throw ValidationError(key, "unknown key in [run]");
}

void set_mc_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  auto& v = cfg.mc.variation;
  if (key == "n") cfg.mc.n = parse_u64(key, value);
  else if (key == "sigma_t_ox") v.sigma_t_ox = parse_double(key, value);
  else if (key == "sigma_t_f") v.sigma_t_f = parse_double(key, value);
  else if (key == "sigma_TMR") v.sigma_TMR = parse_double(key, value);
  else if (key == "sigma_RA") v.sigma_RA = parse_double(key, value);
  else if (key == "truncation") v.truncation = parse_double(key, value);
  else if (key == "seed") v.seed = parse_u64(key, value);
  else if (key == "bins") cfg.mc.bins = parse_u64(key, value);
  else if (key == "workers") cfg.mc.workers = parse_u64(key, value);
  else if (key == "switch_width") cfg.mc.switch_width = parse_double(key, value);
  else throw ValidationError(key, "unknown key in [mc]");
}

bool is_run_key(const std::string& k) {
  static const char* keys[] = {"topology", "gate", "inputs", "rows", "cols", "R_off",
                               "v_drive", "i_sot", "pulse", "calibrate", "placement"};
  return std::any_of(std::begin(keys), std::end(keys), [&](const char* x) { return k == x; });
}

bool is_mc_key(const std::string& k) {
  static const char* keys[] = {"n", "sigma_t_ox", "sigma_t_f", "sigma_TMR", "sigma_RA",
                               "truncation", "seed", "bins", "workers", "switch_width"};
  return std::any_of(std::begin(keys), std::end(keys), [&](const char* x) { return k == x; });
}

}  // namespace

const std::vector<std::string>& device_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : kDeviceFields) k.emplace_back(f.key);
    return k;
  }();
  return keys;
}

bool is_device_key(const std::string& key) { return find_field(key) != nullptr; }

double get_device_value(const DeviceParams& p, const std::string& key) {
  const DeviceField* f = find_field(key);
  if (!f) throw ValidationError(key, "unknown device parameter");
  return p.*(f->member) / f->scale;
}

void set_device_value(DeviceParams& p, const std::string& key, double value) {
  const DeviceField* f = find_field(key);
  if (!f) throw ValidationError(key, "unknown device parameter");
  p.*(f->member) = value * f->scale;
}

void set_key(RunConfig& cfg, const std::string& section, const std::string& key_in,
             const std::string& value) {
  std::string sec = section;
  std::string key = trim(key_in);
  if (sec.empty()) {
    if (auto dot = key.find('.'); dot != std::string::npos) {
      sec = key.substr(0, dot);
      key = key.substr(dot + 1);
    }
  }

  if (sec.empty()) {
    if (is_device_key(key)) set_device_value(cfg.device(), key, parse_double(key, value));
    else if (is_run_key(key)) set_run_key(cfg, key, value);
    else if (is_mc_key(key)) set_mc_key(cfg, key, value);
    else throw ValidationError(key, "unknown configuration key");
    return;
  }
  if (sec == "device") {
    const double v = parse_double(key, value);
    set_device_value(cfg.device_2t1r, key, v);
    set_device_value(cfg.device_vgsot, key, v);
  } else if (sec == "2t1r") {
    set_device_value(cfg.device_2t1r, key, parse_double(key, value));
  } else if (sec == "vgsot") {
    set_device_value(cfg.device_vgsot, key, parse_double(key, value));
  } else if (sec == "run") {
    set_run_key(cfg, key, value);
  } else if (sec == "mc") {
    set_mc_key(cfg, key, value);
  } else {
    throw ValidationError(sec, "unknown configuration section");
  }
}

RunConfig load_config(std::istream& in, RunConfig base) {
  std::string section = "device";
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    try {
      if (t.front() == '[') {
        if (t.back() != ']') throw ValidationError(t, "malformed section header");
        section = trim(t.substr(1, t.size() - 2));
        std::transform(section.begin(), section.end(), section.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (section != "device" && section != "2t1r" && section != "vgsot" && section != "run" &&
            section != "mc")
          throw ValidationError(section, "unknown configuration section");
        continue;
      }
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw ValidationError(t, "expected key = value");
      set_key(base, section, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    } catch (const ValidationError& e) {
      throw ValidationError(e.key(), std::string("line ") + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open '" + path.string() + "'");
  return load_config(in, std::move(base));
}

ArraySpec RunConfig::array_spec() const {
  ArraySpec s;
  s.topology = topology;
  s.rows = std::max(rows, inputs + 1);
  s.cols = cols;
  s.nominal = device();
  s.r_off = r_off;
  return s;
}

OperatingPoint RunConfig::operating_point() const {
  OperatingPoint p = OperatingPoint::for_topology(topology);
  if (v_drive) p.v_drive = *v_drive;
  if (i_sot) p.i_sot = *i_sot;
  if (pulse) p.pulse = *pulse;
  return p;
}

void RunConfig::validate() const {
  device_2t1r.validate();
  device_vgsot.validate();
  if (inputs < 1) throw ValidationError("inputs", "need at least one input");
  if (inputs > 12) throw ValidationError("inputs", "at most 12 inputs are supported");
  if (cols < 1) throw ValidationError("cols", "need at least one column");
  if (!(r_off > 0.0)) throw ValidationError("R_off", "must be positive");
  if (v_drive && !(*v_drive > 0.0)) throw ValidationError("v_drive", "must be a positive magnitude");
  if (i_sot && !(*i_sot >= 0.0)) throw ValidationError("i_sot", "must be >= 0");
  if (pulse && !(*pulse >= 0.0)) throw ValidationError("pulse", "must be >= 0");
  if (!(placement > 0.0 && placement < 1.0)) throw ValidationError("placement", "must lie in (0, 1)");
  if (mc.n < 1) throw ValidationError("n", "need at least one trial");
  if (mc.bins < 1) throw ValidationError("bins", "need at least one bin");
  if (!(mc.switch_width >= 0.0)) throw ValidationError("switch_width", "must be >= 0");
  mc.variation.validate();
  if (format != "csv" && format != "json") throw ValidationError("format", "must be csv or json");
}

std::map<std::string, std::string> RunConfig::resolved() const {
  std::map<std::string, std::string> m;
  for (const auto& k : device_keys()) {
    m["2t1r." + k] = num(get_device_value(device_2t1r, k));
    m["vgsot." + k] = num(get_device_value(device_vgsot, k));
  }
  m["run.topology"] = to_string(topology);
  m["run.gate"] = to_string(gate);
  m["run.inputs"] = std::to_string(inputs);
  m["run.rows"] = std::to_string(rows);
  m["run.cols"] = std::to_string(cols);
  m["run.R_off"] = num(r_off);
  const OperatingPoint p = operating_point();
  m["run.v_drive"] = num(p.v_drive);
  m["run.i_sot"] = num(p.i_sot);
  m["run.pulse"] = num(p.pulse);
  m["run.calibrate"] = calibrate ? "true" : "false";
  m["run.placement"] = num(placement);
  m["mc.n"] = std::to_string(mc.n);
  m["mc.sigma_t_ox"] = num(mc.variation.sigma_t_ox);
  m["mc.sigma_t_f"] = num(mc.variation.sigma_t_f);
  m["mc.sigma_TMR"] = num(mc.variation.sigma_TMR);
  m["mc.sigma_RA"] = num(mc.variation.sigma_RA);
  m["mc.truncation"] = num(mc.variation.truncation);
  m["mc.seed"] = std::to_string(mc.variation.seed);
  m["mc.bins"] = std::to_string(mc.bins);
  m["mc.switch_width"] = num(mc.switch_width);
  return m;
}

std::string RunConfig::digest() const { return config_digest(resolved()); }

std::string default_config_text() {
  return R"(# SOT-MRAM stateful logic: reference device parameters.
[device]
D = 50e-9          # MTJ diameter, m
t_f = 1.1e-9       # free layer thickness, m
t_ox = 1.4e-9      # MgO thickness, m
Ms = 6.25e5        # saturation magnetization, A/m
Ki0 = 3.2e-4       # interfacial PMA at 0 V, J/m^2
alpha = 0.05       # Gilbert damping
P = 0.58           # spin polarization
TMR0 = 1.0         # TMR at 0 V (1.0 = 100 %)
beta = 60e-15      # VCMA coefficient, J/(V m)
theta_SH = 0.25    # spin Hall angle
H_EX_Oe = -50      # exchange bias, Oe
L = 60e-9          # SOT channel length, m
W = 50e-9          # SOT channel width, m
T = 3e-9           # SOT channel thickness, m
rho_SOT = 2.78e-6  # SOT channel resistivity, Ohm m
R_on = 1000        # access transistor on-resistance, Ohm
Ic_cal = 1.0       # critical current calibration factor
J_stt_crit = 5e10  # STT critical current density, A/m^2

[2t1r]
RA = 10            # Ohm um^2

[vgsot]
RA = 650           # Ohm um^2

[run]
topology = 2t1r
gate = NOR
inputs = 2
rows = 4
cols = 4
calibrate = true
placement = 0.5

[mc]
n = 1000
sigma_t_ox = 0.03
sigma_t_f = 0.03
sigma_TMR = 0.03
sigma_RA = 0
truncation = 4
seed = 1
bins = 40
workers = 1
switch_width = 0
)";
}

}  // namespace sotlogic
