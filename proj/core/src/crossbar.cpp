#include "nfc/crossbar.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "nfc/error.hpp"
#include "rng.hpp"

namespace nfc {

Crossbar::Crossbar(std::size_t rows, std::size_t cols, MemristorParams params, double r_f)
    : rows_(rows),
      cols_(cols),
      params_(params),
      r_f_(r_f),
      devices_(rows * cols),
      fault_mask_(rows * cols, 0) {
  params_.validate();
  if (!(r_f > 0.0)) throw Error(Errc::InvalidConfig, fmt::format("R_f = {} must be > 0", r_f));
}

std::size_t Crossbar::index(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) {
    throw Error(Errc::OutOfRange,
                fmt::format("cell ({}, {}) outside {}x{} crossbar", i, j, rows_, cols_));
  }
  return i * cols_ + j;
}

const MemristorState& Crossbar::device(std::size_t i, std::size_t j) const {
  return devices_[index(i, j)];
}

void Crossbar::set_device(std::size_t i, std::size_t j, MemristorState s) {
  if (!(s.x >= 0.0 && s.x <= 1.0)) throw Error(Errc::OutOfRange, "device state outside [0,1]");
  devices_[index(i, j)] = s;
}

bool Crossbar::faulted(std::size_t i, std::size_t j) const { return fault_mask_[index(i, j)] != 0; }

std::size_t Crossbar::faulted_count() const noexcept {
  return static_cast<std::size_t>(std::count(fault_mask_.begin(), fault_mask_.end(), 1));
}

bool Crossbar::row_in_use(std::size_t row) const {
  for (std::size_t j = 0; j < cols_; ++j) {
    const std::size_t k = index(row, j);
    if (!fault_mask_[k] && devices_[k].x != 0.0) return true;
  }
  return false;
}

std::vector<double> Crossbar::vmm(std::span<const double> v) const {
  if (v.size() != cols_) {
    throw Error(Errc::DimensionMismatch,
                fmt::format("{} input voltages for {} columns", v.size(), cols_));
  }
  for (std::size_t j = 0; j < cols_; ++j) {
    if (std::abs(v[j]) >= params_.v_threshold) {
      throw Error(Errc::ReadDisturbRisk,
                  fmt::format("read voltage {} V on column {} reaches threshold {} V", v[j], j,
                              params_.v_threshold));
    }
  }
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const MemristorState* row = devices_.data() + i * cols_;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (v[j] == 0.0) continue;
      acc += v[j] / row[j].memristance(params_);
    }
    out[i] = -r_f_ * acc;
  }
  return out;
}

ProgrammingReport Crossbar::program_row(std::size_t row, std::span<const double> profile,
                                        double duration) {
  return program_row(row, profile, duration, WriteDrive{params_.v_threshold, 1.0});
}

ProgrammingReport Crossbar::program_row(std::size_t row, std::span<const double> profile,
                                        double duration, const WriteDrive& drive) {
  if (row >= rows_) throw Error(Errc::OutOfRange, fmt::format("row {} of {}", row, rows_));
  if (profile.size() != cols_) {
    throw Error(Errc::DimensionMismatch,
                fmt::format("profile of {} entries for {} columns", profile.size(), cols_));
  }
  if (drive.base > params_.v_threshold) {
    throw Error(Errc::InvalidArgument, "write base voltage above threshold disturbs idle cells");
  }
  for (double p : profile) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(Errc::OutOfRange, fmt::format("profile entry {} outside [0,1]", p));
    }
  }
  if (row_in_use(row)) throw Error(Errc::RowInUse, fmt::format("row {} is already programmed", row));

  ProgrammingReport report;
  report.row = row;
  for (std::size_t j = 0; j < cols_; ++j) {
    const std::size_t k = row * cols_ + j;
    if (fault_mask_[k]) {
      if (profile[j] > 0.0) report.skipped_faulted.push_back(j);
      continue;
    }
    if (profile[j] == 0.0) continue;
    devices_[k] = apply_pulse(devices_[k], params_, drive.base + profile[j] * drive.span, duration);
  }
  return report;
}

bool Crossbar::program_conductance(std::size_t i, std::size_t j, double target_g,
                                   const WriteVerify& wv) {
  const std::size_t k = index(i, j);
  const MemristorState goal = state_for_conductance(params_, target_g);
  if (fault_mask_[k]) return false;
  if (!(wv.v_write > params_.v_threshold)) {
    throw Error(Errc::InvalidArgument, "write voltage must exceed the threshold");
  }
  MemristorState s = devices_[k];
  const double tol = wv.rel_tol * target_g;
  if (s.conductance(params_) > target_g + tol) {
    throw Error(Errc::InvalidArgument,
                fmt::format("device ({}, {}) already above target conductance", i, j));
  }
  const double dr = params_.r_off - params_.r_on;
  const double rate = params_.drift_rate() * wv.v_write;
  for (std::size_t n = 0; n < wv.max_pulses; ++n) {
    if (target_g - s.conductance(params_) <= tol) break;
    // Exact pulse length of the continuous model from s.x to goal.x.
    double tau = (params_.r_off * (goal.x - s.x) - 0.5 * dr * (goal.x * goal.x - s.x * s.x)) / rate;
    if (!(tau > 0.0)) break;
    MemristorState trial;
    for (;;) {
      const double dt = std::max(params_.dt, tau / static_cast<double>(wv.max_steps_per_pulse));
      trial = apply_pulse(s, params_, wv.v_write, tau, dt);
      // Euler under-shoots a rising rate, so this only guards the clamp.
      if (trial.conductance(params_) <= target_g + tol || tau < 1e-300) break;
      tau *= 0.5;
    }
    if (trial == s) break;
    s = trial;
  }
  devices_[k] = s;
  return true;
}

void Crossbar::hebbian_pulse(std::span<const double> row_drive, std::span<const double> col_drive,
                             double duration, double v_max) {
  if (row_drive.size() != rows_ || col_drive.size() != cols_) {
    throw Error(Errc::DimensionMismatch,
                fmt::format("drives of {} rows x {} columns for a {}x{} crossbar",
                            row_drive.size(), col_drive.size(), rows_, cols_));
  }
  if (!(v_max >= 0.0 && v_max <= params_.v_threshold)) {
    throw Error(Errc::VoltageEncodingOutOfRange,
                fmt::format("v_max {} V must lie in [0, {}] V", v_max, params_.v_threshold));
  }
  auto check = [&](std::span<const double> d, const char* what) {
    for (double v : d) {
      if (!(v >= 0.0 && v <= v_max)) {
        throw Error(Errc::VoltageEncodingOutOfRange,
                    fmt::format("{} drive {} V outside [0, {}] V", what, v, v_max));
      }
    }
  };
  check(row_drive, "row");
  check(col_drive, "column");

  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const double v = row_drive[i] + col_drive[j];
      if (v <= params_.v_threshold) continue;
      const std::size_t k = i * cols_ + j;
      if (fault_mask_[k]) continue;
      devices_[k] = apply_pulse(devices_[k], params_, v, duration);
    }
  }
}

void Crossbar::distort(double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw Error(Errc::InvalidArgument, fmt::format("fault fraction {} outside [0,1]", fraction));
  }
  const std::size_t cells = rows_ * cols_;
  const auto n = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(cells)));
  Rng rng = make_stream(seed, StreamTag::Faults);
  for (std::size_t k : sample_distinct(cells, n, rng)) {
    fault_mask_[k] = 1;
    devices_[k].x = uniform01(rng);
  }
}

void Crossbar::write_memristance_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << ',';
      out << fmt::format("{}", devices_[i * cols_ + j].memristance(params_));
    }
    out << '\n';
  }
}

}  // namespace nfc
