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

#include "sotlogic/device.hpp"

#include <cmath>

namespace sotlogic {

namespace {

void require_positive(const char* key, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(key, "must be positive and finite");
}

}  // namespace

const char* to_string(MagState s) noexcept { return s == MagState::P ? "P" : "AP"; }

void DeviceParams::validate() const {
  require_positive("D", D);
  require_positive("t_f", t_f);
  require_positive("t_ox", t_ox);
  require_positive("Ms", Ms);
  require_positive("RA", RA);
  require_positive("L", L);
  require_positive("W", W);
  require_positive("T", T);
  require_positive("rho_SOT", rho_SOT);
  if (!(R_on >= 0.0) || !std::isfinite(R_on)) throw ValidationError("R_on", "must be >= 0 and finite");
  require_positive("Ic_cal", Ic_cal);
  require_positive("J_stt_crit", J_stt_crit);
  if (!(TMR0 >= 0.0) || !std::isfinite(TMR0)) throw ValidationError("TMR0", "must be >= 0");
  if (!(theta_SH > 0.0 && theta_SH <= 1.0)) throw ValidationError("theta_SH", "must be in (0, 1]");
  if (!std::isfinite(Ki0)) throw ValidationError("Ki0", "must be finite");
  if (!std::isfinite(beta)) throw ValidationError("beta", "must be finite");
  if (!std::isfinite(alpha) || alpha < 0.0) throw ValidationError("alpha", "must be >= 0");
  if (!std::isfinite(P) || P < 0.0 || P > 1.0) throw ValidationError("P", "must be in [0, 1]");
  if (!std::isfinite(H_EX)) throw ValidationError("H_EX_Oe", "must be finite");
}

double mtj_area(const DeviceParams& p) { return std::numbers::pi * p.D * p.D / 4.0; }

double tmr(const DeviceParams& p, double /*v_bias*/) { return p.TMR0; }

double mtj_resistance(const DeviceParams& p, MagState s, double v_bias) {
  const double r_p = p.RA * constants::ohm_um2 / mtj_area(p);
  return s == MagState::P ? r_p : r_p * (1.0 + tmr(p, v_bias));
}

double channel_resistance(const DeviceParams& p) { return p.rho_SOT * p.L / (p.W * p.T); }

double interfacial_anisotropy(const DeviceParams& p, double v_gate) {
  return p.Ki0 - p.beta * v_gate / p.t_ox;
}

double effective_anisotropy(const DeviceParams& p, double v_gate) {
  return interfacial_anisotropy(p, v_gate) / p.t_f - constants::mu0 * p.Ms * p.Ms / 2.0;
}

double critical_sot_current(const DeviceParams& p, double v_gate) {
  const double k_eff = effective_anisotropy(p, v_gate);
  if (k_eff <= 0.0) return 0.0;
  const double h_k = 2.0 * k_eff / (constants::mu0 * p.Ms);
  const double j_c = (2.0 * constants::electron_charge / constants::hbar) *
                     (p.Ms * p.t_f / p.theta_SH) * constants::mu0 * h_k / 2.0;
  return p.Ic_cal * j_c * p.W * p.T;
}

double switching_probability(double i_applied, double i_crit, const SwitchModel& model) {
  const double mag = std::abs(i_applied);
  if (model.width <= 0.0 || i_crit <= 0.0) return mag >= i_crit ? 1.0 : 0.0;
  const double x = (mag - i_crit) / (model.width * i_crit);
  return 1.0 / (1.0 + std::exp(-x));
}

std::optional<MagState> switch_decision(double i_applied, double i_crit, MagState current,
                                        const SwitchModel& model, double uniform) {
  const bool drives_to_ap = i_applied > 0.0 && current == MagState::P;
  const bool drives_to_p = i_applied < 0.0 && current == MagState::AP;
  if (!drives_to_ap && !drives_to_p) return std::nullopt;

  bool fires = false;
  if (model.width <= 0.0) {
    fires = std::abs(i_applied) >= i_crit;
  } else {
    fires = uniform < switching_probability(i_applied, i_crit, model);
  }
  if (!fires) return std::nullopt;
  return flipped(current);
}

DisturbVerdict check_read_disturb(const DeviceParams& p, double i_mtj) {
  DisturbVerdict v;
  v.current_density = std::abs(i_mtj) / mtj_area(p);
  v.pass = v.current_density < p.J_stt_crit;
  return v;
}

}  // namespace sotlogic
