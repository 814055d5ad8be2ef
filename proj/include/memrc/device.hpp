#pragma once

#include <limits>
#include <string>
#include <vector>

namespace memrc {

// Unipolar memristor with two discrete resistance states. SET is an
// instantaneous power comparison in HRS; RESET is thermal: the device heats
// under dissipated power (first-order law) and resets once the filament
// temperature reaches t_crit.
struct DeviceParams {
  double lrs = 1e3;         // low resistance state, ohm
  double hrs = 1e6;         // high resistance state, ohm
  double p_set = 0.8e-6;    // SET power threshold, W
  double t_amb = 300.0;     // ambient temperature, K
  double t_crit = 310.0;    // RESET temperature, K
  double r_th = 1e5;        // thermal resistance, K/W
  double c_th = 5e-11;      // thermal capacitance, J/K
  double t_lock = 100e-9;   // switch lockout, s
};

enum class ResState { Hrs, Lrs };
enum class SwitchKind { Set, Reset };
enum class SwitchDecision { None, Set, Reset };

struct DeviceState {
  ResState res_state = ResState::Hrs;
  double temperature = 300.0;  // K
  double last_switch_time = -std::numeric_limits<double>::infinity();  // s
};

DeviceState make_initial_device(const DeviceParams& p);

// Present resistance of the device.
double memristance(const DeviceState& s, const DeviceParams& p);

// Power dissipated on the device for a given terminal voltage.
double dissipated_power(double v_mem, const DeviceState& s, const DeviceParams& p);

// Exact update of the filament temperature over dt with the power held
// constant: T' = t_amb + P*r_th + (T - t_amb - P*r_th) * exp(-dt/(r_th*c_th)).
double thermal_step(const DeviceState& s, double power, double dt, const DeviceParams& p);

// SET when an HRS device dissipates at least p_set; RESET when an LRS device
// has heated past t_crit. Both gated by the t_lock lockout since the last
// switch.
SwitchDecision check_switch(const DeviceState& s, double v_mem, double t, const DeviceParams& p);

// Toggles the resistance state and stamps the switch time. Temperature is
// carried over unchanged. Throws std::logic_error on an illegal transition
// (SET of an LRS device, RESET of an HRS device, or decision None).
DeviceState apply_switch(DeviceState s, SwitchDecision decision, double t);

// Checks the series-resistance design rule lrs < r_series and
// hrs >= ratio_min * r_series. Returns one message per violated clause;
// empty means ok.
std::vector<std::string> validate_params(const DeviceParams& p, double r_series, double ratio_min);

}  // namespace memrc
