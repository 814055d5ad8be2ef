#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "memrc/network.hpp"

namespace memrc {

enum class StopMode { Horizon, StableReadout };

struct SimConfig {
  double dt = 50e-9;               // integration step, s
  double t_end = 50e-3;            // horizon, s
  double event_tol = 1e-9;         // switch localization tolerance, s
  int sample_every = 100;          // record a sample every N accepted steps
  StopMode stop_mode = StopMode::StableReadout;
  int stable_cycles = 3;           // consecutive identical readouts to stop
  std::uint64_t seed = 1;
  double jitter = 1e-3;            // initial-voltage perturbation amplitude, V
};

std::vector<std::string> validate_sim(const SimConfig& cfg);

struct EventRecord {
  double t = 0.0;
  int cell = 0;
  SwitchKind kind = SwitchKind::Set;
};

struct TraceSample {
  double t = 0.0;
  Eigen::VectorXd v;
};

struct Trace {
  std::vector<TraceSample> samples;
  std::vector<EventRecord> events;
  NetworkState final_state;
  long cycles = 0;        // completed full network cycles
  long steps = 0;         // accepted full steps
};

class SimulationError : public std::runtime_error {
 public:
  SimulationError(std::string message, int cell, double t)
      : std::runtime_error(std::move(message)), cell(cell), t(t) {}
  int cell;
  double t;
};

// One classical RK4 step on the voltage vector with the discrete device
// states frozen. Device temperatures advance by the exact thermal update
// using power evaluated at the step midpoint voltage.
NetworkState rk4_step(const NetworkState& s, const CircuitParams& p,
                      const CapacitanceOperator& fact, double dt);

struct LocatedEvent {
  double t = 0.0;
  int cell = 0;
  SwitchKind kind = SwitchKind::Set;
  NetworkState state;  // integrated sub-step state at the event time
};

// Bisects the step [before, after] for the earliest switch crossing, to
// within event_tol. Requires no cell to be switch-pending at `before`.
// Cells crossing within event_tol of each other tie-break to the lowest
// index. Returns nothing when no cell is pending at `after`.
std::optional<LocatedEvent> locate_switch_event(const NetworkState& before,
                                                const NetworkState& after, const CircuitParams& p,
                                                const CapacitanceOperator& fact, double event_tol);

// Periodic readout callback for StopMode::StableReadout: called after each
// full network cycle (every cell recorded a SET since the previous call)
// with the trace so far; returns the flattened digit grid when a valid
// solution is currently read out, nothing otherwise.
using ReadoutFn = std::function<std::optional<std::vector<int>>(const Trace&)>;

// Integrates the network from `initial` until the horizon or until the
// readout stabilizes. Applies the seeded per-cell jitter to the initial
// voltages, localizes every switch event by bisection, and re-enters the
// step at the event time with the switch applied. Deterministic given
// (initial, p, cfg). Throws SimulationError when a voltage goes non-finite.
Trace run(const NetworkState& initial, const CircuitParams& p, const CapacitanceOperator& fact,
          const SimConfig& cfg, const ReadoutFn& readout = {});

// Closed-form voltage of a single uncoupled node with the device frozen:
//   v(t) = v_tgt + (v0 - v_tgt) * exp(-t / tau),
// with v_tgt the divider target and tau = c * r * m / (r + m).
double analytic_single_node(const CircuitParams& p, ResState frozen, double v0, double t);

// CSV export. Trace header: t,v_out_0,...,v_out_{N-1}; events: t,cell,kind
// with kind in {SET, RESET}. Values in SI units at full precision.
void write_trace_csv(std::ostream& os, const Trace& trace);
void write_events_csv(std::ostream& os, const Trace& trace);

// Full-precision decimal form that round-trips a double (%.17g).
std::string format_si(double value);

}  // namespace memrc
