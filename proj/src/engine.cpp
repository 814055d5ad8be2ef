#include "memrc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

namespace memrc {

std::vector<std::string> validate_sim(const SimConfig& cfg) {
  std::vector<std::string> violations;
  if (!(cfg.dt > 0.0)) violations.push_back("dt must be > 0");
  if (!(cfg.event_tol > 0.0)) violations.push_back("event_tol must be > 0");
  if (!(cfg.event_tol < cfg.dt)) violations.push_back("event_tol must be < dt");
  if (!(cfg.t_end > 0.0)) violations.push_back("t_end must be > 0");
  if (cfg.sample_every < 1) violations.push_back("sample_every must be >= 1");
  if (cfg.stable_cycles < 1) violations.push_back("stable_cycles must be >= 1");
  if (cfg.jitter < 0.0) violations.push_back("jitter must be >= 0");
  return violations;
}

namespace {

// Lowest-index cell with a pending switch decision, or -1.
int first_pending_cell(const NetworkState& s, const CircuitParams& p) {
  for (Eigen::Index i = 0; i < s.v.size(); ++i) {
    const auto& dev = s.devices[static_cast<std::size_t>(i)];
    if (check_switch(dev, p.v_dd - s.v[i], s.t, p.device) != SwitchDecision::None) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

void throw_if_diverged(const NetworkState& s) {
  for (Eigen::Index i = 0; i < s.v.size(); ++i) {
    if (!std::isfinite(s.v[i])) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "simulation diverged: non-finite voltage at cell %lld, t=%g s",
                    static_cast<long long>(i), s.t);
      throw SimulationError(buf, static_cast<int>(i), s.t);
    }
  }
}

// Uniform in [-1, 1) with full 53-bit resolution; avoids
// std::uniform_real_distribution for cross-platform reproducibility.
double unit_symmetric(std::mt19937_64& rng) {
  return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

}  // namespace

NetworkState rk4_step(const NetworkState& s, const CircuitParams& p,
                      const CapacitanceOperator& fact, double dt) {
  NetworkState probe = s;
  const Eigen::VectorXd k1 = derivative(s, p, fact);
  probe.v = s.v + (0.5 * dt) * k1;
  const Eigen::VectorXd k2 = derivative(probe, p, fact);
  probe.v = s.v + (0.5 * dt) * k2;
  const Eigen::VectorXd k3 = derivative(probe, p, fact);
  probe.v = s.v + dt * k3;
  const Eigen::VectorXd k4 = derivative(probe, p, fact);

  NetworkState next = s;
  next.t = s.t + dt;
  next.v = s.v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  for (Eigen::Index i = 0; i < next.v.size(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double v_mid = 0.5 * (s.v[i] + next.v[i]);
    const double power = dissipated_power(p.v_dd - v_mid, s.devices[idx], p.device);
    next.devices[idx].temperature = thermal_step(s.devices[idx], power, dt, p.device);
  }
  return next;
}

std::optional<LocatedEvent> locate_switch_event(const NetworkState& before,
                                                const NetworkState& after, const CircuitParams& p,
                                                const CapacitanceOperator& fact,
                                                double event_tol) {
  if (first_pending_cell(after, p) < 0) {
    return std::nullopt;
  }
  double lo = 0.0;
  double hi = after.t - before.t;
  NetworkState at_hi = after;
  while (hi - lo > event_tol) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    NetworkState probe = rk4_step(before, p, fact, mid);
    if (first_pending_cell(probe, p) >= 0) {
      hi = mid;
      at_hi = std::move(probe);
    } else {
      lo = mid;
    }
  }
  const int cell = first_pending_cell(at_hi, p);
  const auto& dev = at_hi.devices[static_cast<std::size_t>(cell)];
  const SwitchDecision decision = check_switch(dev, p.v_dd - at_hi.v[cell], at_hi.t, p.device);
  LocatedEvent ev;
  ev.t = at_hi.t;
  ev.cell = cell;
  ev.kind = decision == SwitchDecision::Set ? SwitchKind::Set : SwitchKind::Reset;
  ev.state = std::move(at_hi);
  return ev;
}

Trace run(const NetworkState& initial, const CircuitParams& p, const CapacitanceOperator& fact,
          const SimConfig& cfg, const ReadoutFn& readout) {
  const auto n = initial.v.size();
  if (static_cast<Eigen::Index>(initial.devices.size()) != n || fact.size() != n) {
    throw std::invalid_argument("run: state and factorization sizes disagree");
  }
  if (!(cfg.dt > 0.0) || !(cfg.event_tol > 0.0) || !(cfg.event_tol < cfg.dt) ||
      cfg.sample_every < 1 || cfg.stable_cycles < 1 || cfg.jitter < 0.0 || !(cfg.t_end >= 0.0)) {
    throw std::invalid_argument("run: invalid simulation config");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(initial.v[i] >= 0.0 && initial.v[i] <= p.v_dd)) {
      throw std::invalid_argument("run: initial voltage outside [0, v_dd] at cell " +
                                  std::to_string(i));
    }
  }

  NetworkState s = initial;
  if (cfg.jitter > 0.0) {
    std::mt19937_64 rng(cfg.seed);
    for (Eigen::Index i = 0; i < n; ++i) {
      s.v[i] += cfg.jitter * unit_symmetric(rng);
    }
  }

  Trace trace;
  trace.samples.push_back({s.t, s.v});
  if (cfg.t_end <= 0.0) {
    trace.final_state = std::move(s);
    return trace;
  }

  std::vector<char> set_seen(static_cast<std::size_t>(n), 0);
  std::optional<std::vector<int>> last_grid;
  int streak = 0;
  bool stop = false;

  auto record_event = [&](int cell, SwitchKind kind) {
    trace.events.push_back({s.t, cell, kind});
    if (kind != SwitchKind::Set) return;
    set_seen[static_cast<std::size_t>(cell)] = 1;
    if (std::find(set_seen.begin(), set_seen.end(), 0) != set_seen.end()) return;
    ++trace.cycles;
    std::fill(set_seen.begin(), set_seen.end(), 0);
    if (cfg.stop_mode == StopMode::StableReadout && readout) {
      trace.final_state = s;
      auto grid = readout(trace);
      if (grid && last_grid && *grid == *last_grid) {
        ++streak;
      } else {
        streak = grid ? 1 : 0;
      }
      last_grid = std::move(grid);
      if (streak >= cfg.stable_cycles) stop = true;
    }
  };

  // Applies every switch due at the current instant, lowest cell first.
  auto resolve_pending = [&]() {
    const long cascade_limit = 8 * static_cast<long>(n) + 8;
    long applied = 0;
    for (;;) {
      const int cell = first_pending_cell(s, p);
      if (cell < 0) break;
      if (++applied > cascade_limit) {
        throw SimulationError("switch cascade did not settle (t_lock too small?)", cell, s.t);
      }
      auto& dev = s.devices[static_cast<std::size_t>(cell)];
      const SwitchDecision decision = check_switch(dev, p.v_dd - s.v[cell], s.t, p.device);
      dev = apply_switch(dev, decision, s.t);
      record_event(cell, decision == SwitchDecision::Set ? SwitchKind::Set : SwitchKind::Reset);
    }
  };

  resolve_pending();
  long accepted = 0;
  while (!stop && s.t < cfg.t_end) {
    const double h = std::min(cfg.dt, cfg.t_end - s.t);
    if (!(h > 0.0) || s.t + h == s.t) break;
    NetworkState next = rk4_step(s, p, fact, h);
    throw_if_diverged(next);
    if (first_pending_cell(next, p) >= 0) {
      auto ev = locate_switch_event(s, next, p, fact, cfg.event_tol);
      s = std::move(ev->state);
      auto& dev = s.devices[static_cast<std::size_t>(ev->cell)];
      const auto decision =
          ev->kind == SwitchKind::Set ? SwitchDecision::Set : SwitchDecision::Reset;
      dev = apply_switch(dev, decision, s.t);
      record_event(ev->cell, ev->kind);
      resolve_pending();
      continue;  // re-enter the step at the event time
    }
    s = std::move(next);
    ++accepted;
    if (accepted % cfg.sample_every == 0) {
      trace.samples.push_back({s.t, s.v});
    }
  }
  trace.steps = accepted;
  trace.final_state = std::move(s);
  return trace;
}

double analytic_single_node(const CircuitParams& p, ResState frozen, double v0, double t) {
  const double m = frozen == ResState::Lrs ? p.device.lrs : p.device.hrs;
  const double v_tgt = divider_target(p.v_dd, p.r, m);
  const double tau = p.c * (p.r * m) / (p.r + m);
  return v_tgt + (v0 - v_tgt) * std::exp(-t / tau);
}

std::string format_si(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_trace_csv(std::ostream& os, const Trace& trace) {
  const Eigen::Index n =
      trace.samples.empty() ? trace.final_state.v.size() : trace.samples.front().v.size();
  os << 't';
  for (Eigen::Index j = 0; j < n; ++j) {
    os << ",v_out_" << j;
  }
  os << '\n';
  for (const auto& sample : trace.samples) {
    os << format_si(sample.t);
    for (Eigen::Index j = 0; j < n; ++j) {
      os << ',' << format_si(sample.v[j]);
    }
    os << '\n';
  }
}

void write_events_csv(std::ostream& os, const Trace& trace) {
  os << "t,cell,kind\n";
  for (const auto& e : trace.events) {
    os << format_si(e.t) << ',' << e.cell << ','
       << (e.kind == SwitchKind::Set ? "SET" : "RESET") << '\n';
  }
}

}  // namespace memrc
