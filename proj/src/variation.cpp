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

#include "sotlogic/variation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace sotlogic {

void VariationSpec::validate() const {
  const std::pair<const char*, double> sigmas[] = {
      {"sigma_t_ox", sigma_t_ox}, {"sigma_t_f", sigma_t_f}, {"sigma_TMR", sigma_TMR}, {"sigma_RA", sigma_RA}};
  if (!(truncation > 0.0) || !std::isfinite(truncation))
    throw ValidationError("truncation", "must be positive");
  for (const auto& [key, sigma] : sigmas) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ValidationError(key, "must be >= 0");
    if (sigma * truncation >= 1.0)
      throw ValidationError(key, "sigma * truncation must stay below 1");
  }
}

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t pattern, std::uint64_t trial)
    : normal_(0.0, 1.0), uniform_(0.0, 1.0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(pattern), static_cast<std::uint32_t>(pattern >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  engine_.seed(seq);
}

double TrialStream::truncated_normal(double bound) {
  for (;;) {
    const double z = normal_(engine_);
    if (std::abs(z) <= bound) return z;
  }
}

double TrialStream::uniform() { return uniform_(engine_); }

DeviceParams sample_cell(const DeviceParams& nominal, const VariationSpec& spec, TrialStream& stream) {
  const double z_ox = stream.truncated_normal(spec.truncation);
  const double z_f = stream.truncated_normal(spec.truncation);
  const double z_tmr = stream.truncated_normal(spec.truncation);
  const double z_ra = stream.truncated_normal(spec.truncation);
  DeviceParams p = nominal;
  p.t_ox *= 1.0 + spec.sigma_t_ox * z_ox;
  p.t_f *= 1.0 + spec.sigma_t_f * z_f;
  p.TMR0 *= 1.0 + spec.sigma_TMR * z_tmr;
  p.RA *= 1.0 + spec.sigma_RA * z_ra;
  return p;
}

MCResult run_mc(const ArraySpec& array_spec, const GateOp& op, std::size_t n,
                const VariationSpec& spec, const McOptions& options) {
  if (n < 1) throw std::invalid_argument("need at least one trial");
  spec.validate();
  const Array blank(array_spec);
  op.validate(blank);

  const std::size_t k = op.input_rows.size();
  if (k >= 20) throw std::invalid_argument("too many gate inputs");
  const std::size_t n_patterns = std::size_t{1} << k;
  const bool init = logic_value(op.out_init);

  MCResult result;
  result.topology = array_spec.topology;
  result.kind = op.kind;
  result.n_inputs = k;
  result.trials = n;
  result.spec = spec;
  result.op = op;
  result.nominal_i_crit = critical_sot_current(array_spec.nominal, 0.0);

  std::vector<Array> bases;
  for (std::size_t p = 0; p < n_patterns; ++p) {
    Array a = blank;
    const auto bits = pattern_bits(p, k);
    for (std::size_t i = 0; i < k; ++i) a.set_state(op.input_rows[i], op.col, from_logic(bits[i]));
    bases.push_back(std::move(a));

    PatternResult pr;
    pr.inputs = bits;
    pr.expected = evaluate(op.kind, bits);
    pr.must_switch = pr.expected != init;
    pr.trials = n;
    pr.channel_current.resize(n);
    pr.i_crit.resize(n);
    pr.v_bl.resize(n);
    pr.energy.resize(n);
    result.patterns.push_back(std::move(pr));
  }

  // vector<bool> packs bits, so workers write bytes and we convert after.
  std::vector<std::uint8_t> switched(n_patterns * n);
  std::vector<std::uint8_t> success(n_patterns * n);

  auto run_trial = [&](std::size_t task) {
    const std::size_t p = task / n;
    const std::size_t t = task % n;
    TrialStream stream(spec.seed, p, t);
    Array a = bases[p];
    for (std::size_t row : op.input_rows) {
      CellState& c = a.cell(row, op.col);
      c.dev = sample_cell(c.dev, spec, stream);
    }
    CellState& out = a.cell(op.output_row, op.col);
    out.dev = sample_cell(out.dev, spec, stream);
    const double u = stream.uniform();

    const GateTrace trace = execute_gate(a, op, {options.switching, u});
    PatternResult& pr = result.patterns[p];
    pr.channel_current[t] = trace.channel_current;
    pr.i_crit[t] = trace.i_crit;
    pr.v_bl[t] = array_spec.topology == Topology::VGSOT ? trace.v_gate : 0.0;
    pr.energy[t] = trace.energy;
    switched[task] = trace.switched;
    success[task] = logic_value(trace.output) == pr.expected;
  };

  std::size_t workers = options.workers == 0 ? std::thread::hardware_concurrency() : options.workers;
  workers = std::max<std::size_t>(1, std::min(workers, n_patterns * n));
  if (workers == 1) {
    for (std::size_t task = 0; task < n_patterns * n; ++task) run_trial(task);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::size_t task = next++; task < n_patterns * n && !failed; task = next++) run_trial(task);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (std::size_t p = 0; p < n_patterns; ++p) {
    PatternResult& pr = result.patterns[p];
    pr.switched.assign(switched.begin() + static_cast<std::ptrdiff_t>(p * n),
                       switched.begin() + static_cast<std::ptrdiff_t>((p + 1) * n));
    pr.success.assign(success.begin() + static_cast<std::ptrdiff_t>(p * n),
                      success.begin() + static_cast<std::ptrdiff_t>((p + 1) * n));
    pr.successes = static_cast<std::size_t>(std::count(pr.success.begin(), pr.success.end(), true));
    pr.success_rate = static_cast<double>(pr.successes) / static_cast<double>(n);
  }
  return result;
}

std::vector<double> observable(const MCResult& result, std::size_t pattern, Observable which) {
  const PatternResult& pr = result.patterns.at(pattern);
  std::vector<double> v(pr.trials);
  for (std::size_t t = 0; t < pr.trials; ++t) {
    if (result.topology == Topology::VGSOT) {
      v[t] = which == Observable::Drive ? pr.i_crit[t] : pr.v_bl[t];
    } else if (which == Observable::Raw) {
      v[t] = std::abs(pr.channel_current[t]);
    } else {
      v[t] = pr.i_crit[t] > 0.0 ? std::abs(pr.channel_current[t]) * result.nominal_i_crit / pr.i_crit[t]
                                : std::numeric_limits<double>::infinity();
    }
  }
  return v;
}

Histogram current_histogram(const MCResult& result, std::size_t bins, Observable which) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  if (result.patterns.empty() || result.trials == 0) throw std::invalid_argument("empty MC result");

  std::vector<std::vector<double>> values;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < result.patterns.size(); ++p) {
    values.push_back(observable(result, p, which));
    for (double x : values.back()) {
      if (!std::isfinite(x)) continue;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  if (!std::isfinite(lo)) lo = hi = 0.0;
  // A degenerate range still gets a bin of nonzero width.
  if (!(hi > lo)) {
    const double pad = lo != 0.0 ? std::abs(lo) * 1e-6 : 1e-12;
    lo -= pad;
    hi += pad;
  }

  Histogram h;
  h.observable = which;
  h.edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = lo + width * static_cast<double>(b);
  h.edges.back() = hi;
  for (std::size_t p = 0; p < values.size(); ++p) {
    std::vector<std::size_t> counts(bins, 0);
    for (double x : values[p]) {
      std::size_t b = 0;
      if (std::isnan(x)) continue;
      if (x >= hi) {
        b = bins - 1;
      } else if (x > lo) {
        b = std::min(bins - 1, static_cast<std::size_t>((x - lo) / width));
      }
      ++counts[b];
    }
    h.counts.push_back(std::move(counts));
    h.labels.push_back(result.patterns[p].label());
  }

  h.threshold = result.topology == Topology::TwoT1R ? result.nominal_i_crit : result.op.i_sot;
  std::size_t hold_samples = 0;
  std::size_t crossing = 0;
  for (std::size_t p = 0; p < result.patterns.size(); ++p) {
    if (result.patterns[p].must_switch) continue;
    hold_samples += result.patterns[p].trials;
    crossing += unintentional_switches(result, p);
  }
  h.overlap = hold_samples ? static_cast<double>(crossing) / static_cast<double>(hold_samples) : 0.0;
  return h;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    const double fx = static_cast<double>(i) / static_cast<double>(x.size());
    const double fy = static_cast<double>(j) / static_cast<double>(y.size());
    d = std::max(d, std::abs(fx - fy));
  }
  return d;
}

double ks_critical(std::size_t n, std::size_t m, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return c * std::sqrt((nn + mm) / (nn * mm));
}

std::size_t unintentional_switches(const MCResult& result, std::size_t pattern) {
  const PatternResult& pr = result.patterns.at(pattern);
  if (pr.must_switch) return 0;
  std::size_t count = 0;
  for (std::size_t t = 0; t < pr.trials; ++t) {
    const double drive = result.topology == Topology::TwoT1R ? std::abs(pr.channel_current[t])
                                                             : result.op.i_sot;
    if (drive >= pr.i_crit[t]) ++count;
  }
  return count;
}

}  // namespace sotlogic
