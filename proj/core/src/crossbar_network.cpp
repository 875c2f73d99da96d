#include "nfc/crossbar_network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "nfc/error.hpp"
#include "rng.hpp"

namespace nfc {

CrossbarNetwork::CrossbarNetwork(NetworkConfig config, MemristorParams params,
                                 HardwareOptions options)
    : config_(std::move(config)),
      options_(options),
      cb1_(options.capacity, config_.input_width(), params, options.r_f),
      cb2_(config_.output.count(), options.capacity, params, options.r_f) {
  config_.validate();
  if (options_.capacity == 0) throw Error(Errc::InvalidConfig, "crossbar capacity must be > 0");
  if (!(options_.v_read > 0.0 && options_.v_read < params.v_threshold)) {
    throw Error(Errc::InvalidConfig, "read voltage must lie strictly between 0 and threshold");
  }
  if (!(options_.v_max > 0.0 && options_.v_max <= params.v_threshold)) {
    throw Error(Errc::InvalidConfig, "Hebbian drive must lie in (0, threshold]");
  }
  std::size_t offset = 0;
  for (const auto& g : config_.inputs) {
    offsets_.push_back(offset);
    offset += g.universe.count();
    row_norms_.emplace_back(options_.capacity, 0.0);
  }
}

void CrossbarNetwork::distort(double fraction, std::uint64_t seed) {
  cb1_.distort(fraction, seed);
  cb2_.distort(fraction, splitmix64(seed));
  for (std::size_t r = 0; r < options_.capacity; ++r) refresh_norms(r);
}

void CrossbarNetwork::refresh_norms(std::size_t row) {
  const double g_off = cb1_.params().g_off();
  for (std::size_t g = 0; g < config_.inputs.size(); ++g) {
    double s = 0.0;
    for (std::size_t c = 0; c < config_.inputs[g].universe.count(); ++c) {
      const double w = cb1_.conductance(row, offsets_[g] + c) - g_off;
      s += w * w;
    }
    row_norms_[g][row] = std::sqrt(s);
  }
}

std::vector<MembershipVector> CrossbarNetwork::fuzzify(std::span<const double> crisp) const {
  if (crisp.size() != config_.inputs.size()) {
    throw Error(Errc::DimensionMismatch,
                fmt::format("{} crisp inputs for {} groups", crisp.size(), config_.inputs.size()));
  }
  std::vector<MembershipVector> out;
  for (std::size_t g = 0; g < crisp.size(); ++g) {
    out.push_back(fuzzify_triangular(config_.inputs[g].universe, crisp[g],
                                     config_.inputs[g].half_support));
  }
  return out;
}

void CrossbarNetwork::check_inputs(std::span<const MembershipVector> inputs) const {
  if (inputs.size() != config_.inputs.size()) {
    throw Error(Errc::UniverseMismatch,
                fmt::format("{} inputs for {} groups", inputs.size(), config_.inputs.size()));
  }
  for (std::size_t g = 0; g < inputs.size(); ++g) {
    if (!(inputs[g].universe() == config_.inputs[g].universe)) {
      throw Error(Errc::UniverseMismatch,
                  fmt::format("input '{}' uses a different universe", config_.inputs[g].name));
    }
  }
}

std::vector<double> CrossbarNetwork::hidden(std::span<const MembershipVector> inputs) const {
  if (minterms_ == 0) throw Error(Errc::UntrainedNetwork, "network has no min-terms");
  const double g_off = cb1_.params().g_off();
  const double r_f = cb1_.r_f();
  const double v_read = options_.v_read;

  std::vector<std::vector<double>> sims(inputs.size());
  std::vector<double> drive(cb1_.cols(), 0.0);
  for (std::size_t g = 0; g < inputs.size(); ++g) {
    const auto mu = inputs[g].values();
    std::fill(drive.begin(), drive.end(), 0.0);
    double v_sum = 0.0;
    double mu_norm = 0.0;
    for (std::size_t c = 0; c < mu.size(); ++c) {
      drive[offsets_[g] + c] = v_read * mu[c];
      v_sum += drive[offsets_[g] + c];
      mu_norm += mu[c] * mu[c];
    }
    mu_norm = std::sqrt(mu_norm);
    const auto currents = cb1_.vmm(drive);
    sims[g].resize(minterms_);
    for (std::size_t r = 0; r < minterms_; ++r) {
      const double dot = (-currents[r] - r_f * g_off * v_sum) / (r_f * v_read);
      const double denom = row_norms_[g][r] * mu_norm;
      sims[g][r] = denom == 0.0 ? 0.0 : std::clamp(dot / denom, 0.0, 1.0);
    }
  }

  std::vector<double> h(minterms_);
  const TNorm activation = TNorm::power_sum(config_.p);
  std::vector<double> per_group(inputs.size());
  for (std::size_t r = 0; r < minterms_; ++r) {
    for (std::size_t g = 0; g < inputs.size(); ++g) per_group[g] = sims[g][r];
    h[r] = apply_tnorm(activation, per_group);
  }
  return h;
}

ForwardResult CrossbarNetwork::forward(std::span<const MembershipVector> inputs) const {
  check_inputs(inputs);
  ForwardResult out;
  out.hidden = hidden(inputs);
  const double g_off = cb2_.params().g_off();
  const double g_span = cb2_.params().g_on() - g_off;
  const double r_f = cb2_.r_f();
  const double v_read = options_.v_read;

  std::vector<double> drive(cb2_.cols(), 0.0);
  double v_sum = 0.0;
  for (std::size_t j = 0; j < minterms_; ++j) {
    drive[j] = v_read * out.hidden[j];
    v_sum += drive[j];
  }
  const auto currents = cb2_.vmm(drive);
  out.output.resize(currents.size());
  for (std::size_t i = 0; i < currents.size(); ++i) {
    // Baseline subtraction can leave rounding residue just below zero.
    out.output[i] = std::max(0.0, (-currents[i] - r_f * g_off * v_sum) / (r_f * g_span * v_read));
  }
  return out;
}

double CrossbarNetwork::infer_crisp(std::span<const MembershipVector> inputs) const {
  return defuzzify_centroid(config_.output, forward(inputs).output);
}

std::size_t CrossbarNetwork::classify(std::span<const MembershipVector> inputs) const {
  const auto r = forward(inputs);
  const auto it = std::max_element(r.output.begin(), r.output.end());
  if (!(*it > 0.0)) throw Error(Errc::Unclassifiable, "no output neuron is active");
  return static_cast<std::size_t>(std::distance(r.output.begin(), it));
}

TrainOutcome CrossbarNetwork::train_one(std::span<const MembershipVector> inputs,
                                        const Target& target) {
  check_inputs(inputs);
  MembershipVector u = MembershipVector::zeros(config_.output);
  if (const auto* crisp = std::get_if<double>(&target)) {
    if (!config_.output.contains(*crisp)) {
      throw Error(Errc::TargetOutOfRange, fmt::format("target {} outside output universe", *crisp));
    }
    u = fuzzify_triangular(config_.output, *crisp, config_.output_half_support);
  } else {
    u = std::get<MembershipVector>(target);
    if (!(u.universe() == config_.output)) {
      throw Error(Errc::UniverseMismatch, "fuzzy target uses a different universe");
    }
  }

  TrainOutcome outcome;
  if (minterms_ > 0) {
    const ForwardResult fwd = forward(inputs);
    if (const auto* crisp = std::get_if<double>(&target)) {
      const bool any = std::any_of(fwd.output.begin(), fwd.output.end(), [](double v) { return v > 0.0; });
      outcome.pre_update_error = any ? std::abs(defuzzify_centroid(config_.output, fwd.output) - *crisp)
                                     : std::numeric_limits<double>::infinity();
    } else {
      outcome.pre_update_error = 1.0 - cosine_similarity(fwd.output, u.values());
    }
    if (outcome.pre_update_error < config_.novelty_threshold) {
      outcome.hidden = fwd.hidden;
      return outcome;
    }
  }

  if (minterms_ >= options_.capacity) {
    throw Error(Errc::CapacityExceeded,
                fmt::format("all {} provisioned min-term rows are in use", options_.capacity));
  }
  std::vector<double> profile(cb1_.cols(), 0.0);
  for (std::size_t g = 0; g < inputs.size(); ++g) {
    const auto mu = inputs[g].values();
    std::copy(mu.begin(), mu.end(), profile.begin() + static_cast<std::ptrdiff_t>(offsets_[g]));
  }
  const std::size_t row = minterms_;
  cb1_.program_row(row, profile, options_.program_duration, options_.program_drive);
  refresh_norms(row);
  ++minterms_;

  outcome.kind = TrainOutcome::Kind::MinTermAdded;
  outcome.index = row;
  outcome.hidden = hidden(inputs);

  std::vector<double> row_drive(cb2_.rows());
  for (std::size_t i = 0; i < row_drive.size(); ++i) row_drive[i] = options_.v_max * u[i];
  std::vector<double> col_drive(cb2_.cols(), 0.0);
  for (std::size_t j = 0; j < minterms_; ++j) col_drive[j] = options_.v_max * outcome.hidden[j];
  cb2_.hebbian_pulse(row_drive, col_drive, options_.hebbian_duration, options_.v_max);
  return outcome;
}

}  // namespace nfc
