#pragma once

// Network trained directly on simulated crossbars: a new min-term is written
// by row programming, output connections learn through coincident voltage
// pulses, and every activation is obtained from crossbar reads.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nfc/crossbar.hpp"
#include "nfc/network.hpp"

namespace nfc {

struct HardwareOptions {
  /// Provisioned min-term rows (> 0).
  std::size_t capacity = 0;
  double r_f = 16e3;
  double v_read = 0.5;
  WriteDrive program_drive{};
  double program_duration = 0.05;
  double hebbian_duration = 0.05;
  /// Drive voltage of a membership / activation of 1 during Hebbian pulses.
  double v_max = 1.0;
};

class CrossbarNetwork {
 public:
  /// Throws InvalidConfig.
  CrossbarNetwork(NetworkConfig config, MemristorParams params, HardwareOptions options);

  const NetworkConfig& config() const noexcept { return config_; }
  const HardwareOptions& options() const noexcept { return options_; }
  std::size_t minterm_count() const noexcept { return minterms_; }
  const Crossbar& input_xbar() const noexcept { return cb1_; }
  const Crossbar& output_xbar() const noexcept { return cb2_; }

  /// Distorts both crossbars (independent streams derived from `seed`).
  void distort(double fraction, std::uint64_t seed);

  std::vector<MembershipVector> fuzzify(std::span<const double> crisp) const;

  /// Raw outputs are conductance increments above G_off in units of G_on - G_off.
  ForwardResult forward(std::span<const MembershipVector> inputs) const;
  double infer_crisp(std::span<const MembershipVector> inputs) const;
  std::size_t classify(std::span<const MembershipVector> inputs) const;

  /// Same novelty rule as the ideal network; the Hebbian step is one pulse on
  /// the output crossbar (the configured software t-norm is not used).
  TrainOutcome train_one(std::span<const MembershipVector> inputs, const Target& target);

 private:
  void check_inputs(std::span<const MembershipVector> inputs) const;
  std::vector<double> hidden(std::span<const MembershipVector> inputs) const;
  void refresh_norms(std::size_t row);

  NetworkConfig config_;
  HardwareOptions options_;
  Crossbar cb1_;
  Crossbar cb2_;
  std::size_t minterms_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<double>> row_norms_;  // [group][row], all capacity rows
};

}  // namespace nfc
