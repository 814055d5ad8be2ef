#include "memrc/device.hpp"

#include <cmath>
#include <stdexcept>

namespace memrc {

DeviceState make_initial_device(const DeviceParams& p) {
  DeviceState s;
  s.res_state = ResState::Hrs;
  s.temperature = p.t_amb;
  s.last_switch_time = -std::numeric_limits<double>::infinity();
  return s;
}

double memristance(const DeviceState& s, const DeviceParams& p) {
  return s.res_state == ResState::Lrs ? p.lrs : p.hrs;
}

double dissipated_power(double v_mem, const DeviceState& s, const DeviceParams& p) {
  return v_mem * v_mem / memristance(s, p);
}

double thermal_step(const DeviceState& s, double power, double dt, const DeviceParams& p) {
  const double t_inf = p.t_amb + power * p.r_th;
  return t_inf + (s.temperature - t_inf) * std::exp(-dt / (p.r_th * p.c_th));
}

SwitchDecision check_switch(const DeviceState& s, double v_mem, double t, const DeviceParams& p) {
  if (t - s.last_switch_time < p.t_lock) {
    return SwitchDecision::None;
  }
  if (s.res_state == ResState::Hrs) {
    if (dissipated_power(v_mem, s, p) >= p.p_set) {
      return SwitchDecision::Set;
    }
  } else {
    if (s.temperature >= p.t_crit) {
      return SwitchDecision::Reset;
    }
  }
  return SwitchDecision::None;
}

DeviceState apply_switch(DeviceState s, SwitchDecision decision, double t) {
  if (decision == SwitchDecision::Set && s.res_state == ResState::Hrs) {
    s.res_state = ResState::Lrs;
  } else if (decision == SwitchDecision::Reset && s.res_state == ResState::Lrs) {
    s.res_state = ResState::Hrs;
  } else {
    throw std::logic_error("apply_switch: illegal transition for current resistance state");
  }
  s.last_switch_time = t;
  return s;
}

std::vector<std::string> validate_params(const DeviceParams& p, double r_series, double ratio_min) {
  std::vector<std::string> violations;
  if (!(p.lrs < r_series)) {
    violations.push_back("LRS<R violated: lrs=" + std::to_string(p.lrs) +
                         " >= r=" + std::to_string(r_series));
  }
  if (!(p.hrs >= ratio_min * r_series)) {
    violations.push_back("R<<HRS violated: hrs/r=" + std::to_string(p.hrs / r_series) +
                         " < ratio_min=" + std::to_string(ratio_min));
  }
  return violations;
}

}  // namespace memrc
