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
 * @file device.hpp
 * @brief Compact electrical model of a single SOT-MRAM cell.
 *
 * The cell is a perpendicular MTJ sitting on a heavy-metal/AFM channel.
 * Reads go through the MTJ, writes go through the channel. The model here
 * is quasi-static: resistances, a closed-form critical SOT current with a
 * voltage-controlled anisotropy term, and a threshold switching rule.
 */
#ifndef SOTLOGIC_DEVICE_HPP
#define SOTLOGIC_DEVICE_HPP

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace sotlogic {

namespace constants {
inline constexpr double mu0 = 4.0e-7 * std::numbers::pi;  // H/m
inline constexpr double electron_charge = 1.602176634e-19;  // C
inline constexpr double hbar = 1.054571817e-34;  // J s
/// 1 Oe expressed in A/m.
inline constexpr double oersted = 1000.0 / (4.0 * std::numbers::pi);
/// 1 Ohm um^2 expressed in Ohm m^2.
inline constexpr double ohm_um2 = 1.0e-12;
}  // namespace constants

/// Thrown when a parameter set or configuration violates a model invariant.
/// The message names the offending key.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Magnetization of the free layer relative to the reference layer.
/// Parallel is logic '1', anti-parallel is logic '0'.
enum class MagState { P, AP };

constexpr bool logic_value(MagState s) noexcept { return s == MagState::P; }
constexpr MagState from_logic(bool bit) noexcept { return bit ? MagState::P : MagState::AP; }
constexpr MagState flipped(MagState s) noexcept {
  return s == MagState::P ? MagState::AP : MagState::P;
}
const char* to_string(MagState s) noexcept;

/// Physical parameters of one cell. SI units unless noted.
///
/// Defaults are the reference SOT-MRAM parameter set with the 2T-1R R*A.
/// Use `vgsot_defaults()` for the high-R*A voltage-gated variant.
struct DeviceParams {
  double D = 50e-9;          ///< MTJ diameter, m
  double t_f = 1.1e-9;       ///< free-layer thickness, m
  double t_ox = 1.4e-9;      ///< MgO thickness, m
  double Ms = 6.25e5;        ///< saturation magnetization, A/m
  double Ki0 = 3.2e-4;       ///< interfacial anisotropy at 0 V, J/m^2
  double alpha = 0.05;       ///< Gilbert damping (inert in the default law)
  double P = 0.58;           ///< spin polarization (inert in the default law)
  double RA = 10.0;          ///< resistance-area product, Ohm um^2
  double TMR0 = 1.0;         ///< TMR at 0 V, 1.0 == 100 %
  double beta = 60e-15;      ///< VCMA coefficient, J/(V m)
  double theta_SH = 0.25;    ///< spin Hall angle
  double H_EX = -50.0 * constants::oersted;  ///< exchange bias, A/m (inert in the default law)
  double L = 60e-9;          ///< SOT channel length, m
  double W = 50e-9;          ///< SOT channel width, m
  double T = 3e-9;           ///< SOT channel thickness, m
  double rho_SOT = 2.78e-6;  ///< channel resistivity, Ohm m
  double R_on = 1.0e3;       ///< access transistor on-resistance, Ohm
  double Ic_cal = 1.0;       ///< calibration factor on the macrospin critical current
  double J_stt_crit = 5e10;  ///< STT critical current density for read disturb, A/m^2

  static DeviceParams two_t1r_defaults() { return DeviceParams{}; }
  static DeviceParams vgsot_defaults() {
    DeviceParams p;
    p.RA = 650.0;
    return p;
  }

  /// Throws ValidationError naming the first invalid field.
  void validate() const;

  bool operator==(const DeviceParams&) const = default;
};

/// MTJ junction area, pi D^2 / 4.
double mtj_area(const DeviceParams& p);

/// TMR ratio at the given MTJ bias. Bias roll-off is not modeled, so this is TMR0.
double tmr(const DeviceParams& p, double v_bias);

/// Resistance of the MTJ in state `s`. R_P = RA / A, R_AP = R_P (1 + TMR).
double mtj_resistance(const DeviceParams& p, MagState s, double v_bias = 0.0);

/// Resistance of the heavy-metal channel, rho L / (W T).
double channel_resistance(const DeviceParams& p);

/// Interfacial anisotropy lowered by a gate voltage across the oxide.
double interfacial_anisotropy(const DeviceParams& p, double v_gate);

/// Effective perpendicular anisotropy energy density, J/m^3.
double effective_anisotropy(const DeviceParams& p, double v_gate);

/// Critical damping-like SOT current through the channel, A.
///
/// Macrospin threshold J_c = (2e/hbar) (Ms t_f / theta_SH) mu0 H_k / 2 with
/// H_k = 2 K_eff / (mu0 Ms), scaled by the channel cross-section and Ic_cal.
/// Returns 0 once the gate voltage drives K_eff to zero or below.
double critical_sot_current(const DeviceParams& p, double v_gate);

/// Optional thermal smearing of the switching threshold.
/// `width == 0` selects the deterministic threshold rule.
struct SwitchModel {
  double width = 0.0;  ///< relative width w of the logistic, in units of i_crit
};

/// Probability that `i_applied` switches a cell whose threshold is `i_crit`.
double switching_probability(double i_applied, double i_crit, const SwitchModel& model);

/// Threshold switching rule.
///
/// Positive channel current drives P -> AP, negative drives AP -> P. A cell
/// switches when the current has the right sign and |i_applied| >= i_crit
/// (inclusive). With a stochastic model the decision is `uniform < probability`.
/// Returns the new state, or nullopt when nothing changes.
std::optional<MagState> switch_decision(double i_applied, double i_crit, MagState current,
                                        const SwitchModel& model = {}, double uniform = 0.5);

struct DisturbVerdict {
  double current_density = 0.0;  ///< |i| / A_MTJ, A/m^2
  bool pass = true;
};

/// Read disturb check on an MTJ carrying `i_mtj`. Fails iff |i|/A >= J_stt_crit.
DisturbVerdict check_read_disturb(const DeviceParams& p, double i_mtj);

}  // namespace sotlogic

#endif  // SOTLOGIC_DEVICE_HPP
