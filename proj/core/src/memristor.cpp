#include "nfc/memristor.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "nfc/error.hpp"

namespace nfc {

void MemristorParams::validate() const {
  if (!(r_on > 0.0 && r_on < r_off)) {
    throw Error(Errc::InvalidConfig, fmt::format("need 0 < R_on ({}) < R_off ({})", r_on, r_off));
  }
  if (!(thickness > 0.0)) throw Error(Errc::InvalidConfig, "device thickness must be > 0");
  if (!(mobility > 0.0)) throw Error(Errc::InvalidConfig, "ion mobility must be > 0");
  if (!(v_threshold >= 0.0)) throw Error(Errc::InvalidConfig, "threshold voltage must be >= 0");
  if (!(dt > 0.0)) throw Error(Errc::InvalidConfig, "integration step must be > 0");
}

MemristorState step_device(MemristorState s, const MemristorParams& p, double v, double dt) {
  if (std::abs(v) <= p.v_threshold) return s;
  const double current = v / s.memristance(p);
  s.x = std::clamp(s.x + p.drift_rate() * current * dt, 0.0, 1.0);
  return s;
}

MemristorState apply_pulse(MemristorState s, const MemristorParams& p, double v, double duration,
                           double dt) {
  if (!(dt > 0.0)) throw Error(Errc::InvalidArgument, "integration step must be > 0");
  if (!(duration >= 0.0)) throw Error(Errc::InvalidArgument, "pulse duration must be >= 0");
  if (std::abs(v) <= p.v_threshold || duration == 0.0) return s;
  // 1e-9 slack keeps e.g. 0.05 / 1e-5 from losing a step to rounding.
  const auto steps = static_cast<std::size_t>(std::floor(duration / dt + 1e-9));
  for (std::size_t k = 0; k < steps; ++k) s = step_device(s, p, v, dt);
  const double rest = duration - static_cast<double>(steps) * dt;
  if (rest > 1e-12 * dt) s = step_device(s, p, v, rest);
  return s;
}

MemristorState state_for_conductance(const MemristorParams& p, double g) {
  const double tol = 1e-12;
  if (!(g >= p.g_off() * (1.0 - tol) && g <= p.g_on() * (1.0 + tol))) {
    throw Error(Errc::WeightOutOfRange,
                fmt::format("conductance {} outside [{}, {}]", g, p.g_off(), p.g_on()));
  }
  const double m = 1.0 / g;
  return MemristorState{std::clamp((p.r_off - m) / (p.r_off - p.r_on), 0.0, 1.0)};
}

std::vector<SweepPoint> weight_sweep(const MemristorParams& p, double r_f, MemristorState initial,
                                     double v_min, double v_max, std::size_t points,
                                     double duration, double dt) {
  if (points < 2) throw Error(Errc::InvalidArgument, "sweep needs at least two points");
  std::vector<SweepPoint> out;
  out.reserve(points);
  const double w0 = r_f / initial.memristance(p);
  for (std::size_t k = 0; k < points; ++k) {
    const double v = v_min + (v_max - v_min) * static_cast<double>(k) / static_cast<double>(points - 1);
    const MemristorState after = apply_pulse(initial, p, v, duration, dt);
    out.push_back({v, r_f / after.memristance(p) - w0});
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& sweep) {
  out << "voltage,delta_weight\n";
  for (const auto& s : sweep) out << fmt::format("{},{}\n", s.voltage, s.delta_weight);
}

}  // namespace nfc
