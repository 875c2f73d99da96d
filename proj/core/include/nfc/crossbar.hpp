#pragma once

// Memristor crossbar: columns are driven with voltages, each row current is
// sensed by a virtually grounded amplifier with feedback resistance R_f, so a
// device stores the weight R_f / M.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "nfc/memristor.hpp"

namespace nfc {

struct WriteDrive {
  /// Column voltage for a zero profile entry; must not exceed the threshold.
  double base = 1.0;
  /// Added on top of `base` for a profile entry of 1.
  double span = 1.0;
};

struct WriteVerify {
  double v_write = 2.0;
  /// Stop once |G - target| <= rel_tol * target.
  double rel_tol = 1e-9;
  std::size_t max_pulses = 200;
  /// Euler steps per trim pulse are capped here; the verify loop absorbs the
  /// integration error.
  std::size_t max_steps_per_pulse = 256;
};

struct ProgrammingReport {
  std::size_t row = 0;
  std::vector<std::size_t> skipped_faulted;  // columns
};

class Crossbar {
 public:
  /// Throws InvalidConfig for bad params or R_f <= 0.
  Crossbar(std::size_t rows, std::size_t cols, MemristorParams params, double r_f);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const MemristorParams& params() const noexcept { return params_; }
  double r_f() const noexcept { return r_f_; }

  const MemristorState& device(std::size_t i, std::size_t j) const;
  /// Direct state override (test fixtures, restoring dumps). Ignores the fault mask.
  void set_device(std::size_t i, std::size_t j, MemristorState s);
  bool faulted(std::size_t i, std::size_t j) const;
  std::size_t faulted_count() const noexcept;

  double memristance(std::size_t i, std::size_t j) const { return device(i, j).memristance(params_); }
  double conductance(std::size_t i, std::size_t j) const { return device(i, j).conductance(params_); }
  /// R_f / M_ij.
  double weight(std::size_t i, std::size_t j) const { return r_f_ / memristance(i, j); }

  /// A row is in use once any healthy device left x = 0.
  bool row_in_use(std::size_t row) const;

  /// out[i] = -sum_j (R_f / M_ij) * v[j]. Throws ReadDisturbRisk if any
  /// |v[j]| >= v_threshold, DimensionMismatch on length.
  std::vector<double> vmm(std::span<const double> v) const;

  /// Grounds `row` and drives column j at base + profile[j] * span for
  /// `duration`. Faulted cells are left alone and listed in the report.
  /// Throws RowInUse, DimensionMismatch, OutOfRange (profile outside [0,1]).
  ProgrammingReport program_row(std::size_t row, std::span<const double> profile, double duration,
                                const WriteDrive& drive);
  ProgrammingReport program_row(std::size_t row, std::span<const double> profile, double duration);

  /// Trims one healthy device upward to the target conductance with SET
  /// pulses. Returns false for faulted cells. Throws WeightOutOfRange outside
  /// [G_off, G_on], InvalidArgument if the device is already above target.
  bool program_conductance(std::size_t i, std::size_t j, double target_g, const WriteVerify& wv);

  /// Device (i,j) sees row_drive[i] + col_drive[j] for `duration`. Every drive
  /// must lie in [0, v_max] with v_max <= v_threshold, otherwise
  /// VoltageEncodingOutOfRange. Faulted cells are unchanged.
  void hebbian_pulse(std::span<const double> row_drive, std::span<const double> col_drive,
                     double duration, double v_max);

  /// Marks floor(fraction * rows * cols) distinct cells as faulted with x ~ U[0,1].
  void distort(double fraction, std::uint64_t seed);

  /// Memristance matrix as CSV, one crossbar row per line.
  void write_memristance_csv(std::ostream& out) const;

  bool operator==(const Crossbar&) const = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t rows_;
  std::size_t cols_;
  MemristorParams params_;
  double r_f_;
  std::vector<MemristorState> devices_;
  std::vector<std::uint8_t> fault_mask_;
};

}  // namespace nfc
