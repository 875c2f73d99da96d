#pragma once

// Linear ion-drift (HP) memristor with a hard switching threshold.

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace nfc {

struct MemristorParams {
  double r_on = 100.0;        // ohm
  double r_off = 16e3;        // ohm
  double thickness = 10e-9;   // m
  double mobility = 1e-14;    // m^2 / (V s)
  double v_threshold = 1.0;   // V
  double dt = 1e-5;           // s

  /// Throws InvalidConfig.
  void validate() const;

  /// dx/dt = drift_rate() * i(t)
  double drift_rate() const noexcept { return mobility * r_on / (thickness * thickness); }
  double g_on() const noexcept { return 1.0 / r_on; }
  double g_off() const noexcept { return 1.0 / r_off; }

  bool operator==(const MemristorParams&) const = default;
};

/// x is the doped-region fraction: x = 0 -> R_off, x = 1 -> R_on.
struct MemristorState {
  double x = 0.0;

  double memristance(const MemristorParams& p) const noexcept {
    return p.r_on * x + p.r_off * (1.0 - x);
  }
  double conductance(const MemristorParams& p) const noexcept { return 1.0 / memristance(p); }

  bool operator==(const MemristorState&) const = default;
};

/// One explicit-Euler step under constant voltage v. Sub-threshold voltages
/// (|v| <= v_threshold) leave the state untouched; x saturates in [0,1].
MemristorState step_device(MemristorState s, const MemristorParams& p, double v, double dt);

/// Integrates a constant-voltage pulse of the given duration with step `dt`
/// (the last step is shortened to land exactly on the duration).
MemristorState apply_pulse(MemristorState s, const MemristorParams& p, double v, double duration,
                           double dt);
inline MemristorState apply_pulse(MemristorState s, const MemristorParams& p, double v,
                                  double duration) {
  return apply_pulse(s, p, v, duration, p.dt);
}

/// Memristance from which a given conductance is obtained, as a state; throws
/// WeightOutOfRange outside [G_off, G_on].
MemristorState state_for_conductance(const MemristorParams& p, double g);

struct SweepPoint {
  double voltage = 0.0;
  double delta_weight = 0.0;
};

/// Weight change w = R_f / M produced by one constant pulse at each voltage of
/// an evenly spaced sweep, starting every time from `initial`.
std::vector<SweepPoint> weight_sweep(const MemristorParams& p, double r_f, MemristorState initial,
                                     double v_min, double v_max, std::size_t points,
                                     double duration, double dt);

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& sweep);

}  // namespace nfc
