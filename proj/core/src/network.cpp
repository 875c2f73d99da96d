#include "nfc/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "nfc/error.hpp"
#include "rng.hpp"

namespace nfc {

namespace {

double dot(std::span<const double> a, std::span<const double> b, std::size_t first,
           std::size_t last) {
  double s = 0.0;
  for (std::size_t k = first; k < last; ++k) s += a[k] * b[k];
  return s;
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v, 0, v.size())); }

struct Support {
  std::size_t first = 0;
  std::size_t last = 0;
};

Support support_of(std::span<const double> v) {
  std::size_t first = 0;
  while (first < v.size() && v[first] == 0.0) ++first;
  std::size_t last = v.size();
  while (last > first && v[last - 1] == 0.0) --last;
  return {first, last};
}

void mark_random_cells(Matrix& mask, Matrix& value, std::size_t count, Rng& rng,
                       bool random_values) {
  const std::size_t cells = mask.rows() * mask.cols();
  for (std::size_t idx : sample_distinct(cells, count, rng)) {
    mask.data()[idx] = 1.0;
    value.data()[idx] = random_values ? uniform01(rng) : 0.0;
  }
}

}  // namespace

void NetworkConfig::validate() const {
  if (inputs.empty()) throw Error(Errc::InvalidConfig, "at least one input group required");
  if (p < 1) throw Error(Errc::InvalidConfig, fmt::format("p = {} must be >= 1", p));
  if (!(alpha >= 0.0)) throw Error(Errc::InvalidConfig, fmt::format("alpha = {} must be >= 0", alpha));
  if (!(novelty_threshold > 0.0)) {
    throw Error(Errc::InvalidConfig,
                fmt::format("novelty threshold {} must be > 0", novelty_threshold));
  }
  for (const auto& g : inputs) {
    if (!(g.half_support >= 0.0)) {
      throw Error(Errc::InvalidConfig, fmt::format("group '{}' half support < 0", g.name));
    }
  }
  if (!(output_half_support >= 0.0)) throw Error(Errc::InvalidConfig, "output half support < 0");
}

std::size_t NetworkConfig::input_width() const noexcept {
  std::size_t w = 0;
  for (const auto& g : inputs) w += g.universe.count();
  return w;
}

FaultOverlay FaultOverlay::random(const NetworkConfig& config, std::size_t capacity,
                                  double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw Error(Errc::InvalidArgument, fmt::format("fault fraction {} outside [0,1]", fraction));
  }
  FaultOverlay f;
  f.capacity = capacity;
  Rng rng = make_stream(seed, StreamTag::Faults);

  // The input crossbar is one array of capacity x (sum of group widths).
  const std::size_t width = config.input_width();
  Matrix mask(capacity, width);
  Matrix value(capacity, width);
  mark_random_cells(mask, value,
                    static_cast<std::size_t>(std::floor(fraction * static_cast<double>(capacity * width))),
                    rng, true);
  std::size_t offset = 0;
  for (const auto& g : config.inputs) {
    const std::size_t n = g.universe.count();
    Matrix gm(capacity, n);
    Matrix gv(capacity, n);
    for (std::size_t r = 0; r < capacity; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        gm(r, c) = mask(r, offset + c);
        gv(r, c) = value(r, offset + c);
      }
    }
    f.input_mask.push_back(std::move(gm));
    f.input_value.push_back(std::move(gv));
    offset += n;
  }

  const std::size_t nz = config.output.count();
  f.output_mask = Matrix(nz, capacity);
  f.output_value = Matrix(nz, capacity);
  mark_random_cells(f.output_mask, f.output_value,
                    static_cast<std::size_t>(std::floor(fraction * static_cast<double>(nz * capacity))),
                    rng, false);
  return f;
}

std::size_t FaultOverlay::faulted_cells() const noexcept {
  auto count = [](const Matrix& m) {
    return static_cast<std::size_t>(std::count(m.data().begin(), m.data().end(), 1.0));
  };
  std::size_t n = count(output_mask);
  for (const auto& m : input_mask) n += count(m);
  return n;
}

std::size_t FaultOverlay::total_cells() const noexcept {
  std::size_t n = output_mask.rows() * output_mask.cols();
  for (const auto& m : input_mask) n += m.rows() * m.cols();
  return n;
}

Network::Network(NetworkConfig config) : config_(std::move(config)) {
  config_.validate();
  for (const auto& g : config_.inputs) {
    w_in_.emplace_back(0, g.universe.count());
    row_norms_.emplace_back();
  }
  w_out_ = Matrix(0, config_.output.count());
}

Network::Network(NetworkConfig config, FaultOverlay faults) : Network(std::move(config)) {
  if (faults.input_mask.size() != config_.inputs.size() ||
      faults.output_mask.rows() != config_.output.count() ||
      faults.output_mask.cols() != faults.capacity) {
    throw Error(Errc::DimensionMismatch, "fault overlay does not match network shape");
  }
  for (std::size_t g = 0; g < config_.inputs.size(); ++g) {
    if (faults.input_mask[g].rows() != faults.capacity ||
        faults.input_mask[g].cols() != config_.inputs[g].universe.count()) {
      throw Error(Errc::DimensionMismatch, "fault overlay does not match network shape");
    }
  }
  faults_ = std::move(faults);
}

Network Network::restore(NetworkConfig config, std::vector<Matrix> w_in, Matrix w_out_by_hidden,
                         std::optional<FaultOverlay> faults) {
  Network net = faults ? Network(std::move(config), std::move(*faults)) : Network(std::move(config));
  if (w_in.size() != net.config_.inputs.size()) {
    throw Error(Errc::MalformedPayload, "input group count mismatch");
  }
  const std::size_t n = w_out_by_hidden.rows();
  for (std::size_t g = 0; g < w_in.size(); ++g) {
    if (w_in[g].rows() != n || w_in[g].cols() != net.config_.inputs[g].universe.count()) {
      throw Error(Errc::MalformedPayload, "input weight matrix shape mismatch");
    }
  }
  if (w_out_by_hidden.cols() != net.config_.output.count()) {
    throw Error(Errc::MalformedPayload, "output weight matrix shape mismatch");
  }
  net.w_in_ = std::move(w_in);
  net.w_out_ = std::move(w_out_by_hidden);
  net.minterms_ = n;
  for (std::size_t g = 0; g < net.w_in_.size(); ++g) {
    net.row_norms_[g].resize(n);
    for (std::size_t r = 0; r < n; ++r) net.refresh_norm(g, r);
  }
  return net;
}

bool Network::operator==(const Network& other) const {
  return config_ == other.config_ && minterms_ == other.minterms_ && w_in_ == other.w_in_ &&
         w_out_ == other.w_out_ && faults_ == other.faults_;
}

std::span<const double> Network::input_row(std::size_t group, std::size_t row) const {
  if (row >= minterms_) throw Error(Errc::OutOfRange, "min-term index out of range");
  return w_in_.at(group).row(row);
}

double Network::output_weight(std::size_t i, std::size_t j) const {
  if (i >= config_.output.count() || j >= minterms_) {
    throw Error(Errc::OutOfRange, "output weight index out of range");
  }
  return w_out_(j, i);
}

std::vector<MembershipVector> Network::fuzzify(std::span<const double> crisp) const {
  if (crisp.size() != config_.inputs.size()) {
    throw Error(Errc::DimensionMismatch,
                fmt::format("{} crisp inputs for {} groups", crisp.size(), config_.inputs.size()));
  }
  std::vector<MembershipVector> out;
  out.reserve(crisp.size());
  for (std::size_t g = 0; g < crisp.size(); ++g) {
    out.push_back(fuzzify_triangular(config_.inputs[g].universe, crisp[g],
                                     config_.inputs[g].half_support));
  }
  return out;
}

void Network::check_inputs(std::span<const MembershipVector> inputs) const {
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

std::vector<double> Network::hidden(std::span<const MembershipVector> inputs) const {
  check_inputs(inputs);
  if (minterms_ == 0) throw Error(Errc::UntrainedNetwork, "network has no min-terms");

  const std::size_t groups = inputs.size();
  std::vector<Support> supports(groups);
  std::vector<double> input_norms(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    supports[g] = support_of(inputs[g].values());
    input_norms[g] = norm(inputs[g].values());
  }

  std::vector<double> sims(groups);
  std::vector<double> out(minterms_);
  const TNorm activation = TNorm::power_sum(config_.p);
  for (std::size_t i = 0; i < minterms_; ++i) {
    for (std::size_t g = 0; g < groups; ++g) {
      const double denom = row_norms_[g][i] * input_norms[g];
      if (denom == 0.0) {
        sims[g] = 0.0;
        continue;
      }
      const double d = dot(w_in_[g].row(i), inputs[g].values(), supports[g].first, supports[g].last);
      sims[g] = std::clamp(d / denom, 0.0, 1.0);
    }
    out[i] = apply_tnorm(activation, sims);
  }
  return out;
}

ForwardResult Network::forward(std::span<const MembershipVector> inputs) const {
  ForwardResult r;
  r.hidden = hidden(inputs);
  r.output.assign(config_.output.count(), 0.0);
  for (std::size_t j = 0; j < minterms_; ++j) {
    const double h = r.hidden[j];
    if (h == 0.0) continue;
    const auto col = w_out_.row(j);
    for (std::size_t i = 0; i < col.size(); ++i) r.output[i] += col[i] * h;
  }
  return r;
}

double Network::infer_crisp(std::span<const MembershipVector> inputs) const {
  const auto r = forward(inputs);
  return defuzzify_centroid(config_.output, r.output);
}

std::size_t Network::classify(std::span<const MembershipVector> inputs) const {
  const auto r = forward(inputs);
  const auto it = std::max_element(r.output.begin(), r.output.end());
  if (!(*it > 0.0)) throw Error(Errc::Unclassifiable, "no output neuron is active");
  return static_cast<std::size_t>(std::distance(r.output.begin(), it));
}

MembershipVector Network::target_membership(const Target& target) const {
  if (const auto* crisp = std::get_if<double>(&target)) {
    if (!config_.output.contains(*crisp)) {
      throw Error(Errc::TargetOutOfRange,
                  fmt::format("target {} outside [{}, {}]", *crisp, config_.output.lo(),
                              config_.output.hi()));
    }
    return fuzzify_triangular(config_.output, *crisp, config_.output_half_support);
  }
  const auto& fuzzy = std::get<MembershipVector>(target);
  if (!(fuzzy.universe() == config_.output)) {
    throw Error(Errc::UniverseMismatch, "fuzzy target uses a different universe");
  }
  return fuzzy;
}

double Network::novelty_error(const ForwardResult& fwd, const Target& target) const {
  if (const auto* crisp = std::get_if<double>(&target)) {
    const bool any = std::any_of(fwd.output.begin(), fwd.output.end(), [](double v) { return v > 0.0; });
    if (!any) return std::numeric_limits<double>::infinity();
    return std::abs(defuzzify_centroid(config_.output, fwd.output) - *crisp);
  }
  const auto& fuzzy = std::get<MembershipVector>(target);
  return 1.0 - cosine_similarity(fwd.output, fuzzy.values());
}

void Network::refresh_norm(std::size_t group, std::size_t row) {
  row_norms_[group][row] = norm(w_in_[group].row(row));
}

void Network::append_minterm(std::span<const MembershipVector> inputs) {
  const std::size_t row = minterms_;
  if (faults_ && row >= faults_->capacity) {
    throw Error(Errc::CapacityExceeded,
                fmt::format("all {} provisioned min-term rows are in use", faults_->capacity));
  }
  for (std::size_t g = 0; g < inputs.size(); ++g) {
    w_in_[g].append_row(inputs[g].values());
    if (faults_) {
      auto r = w_in_[g].row(row);
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (faults_->input_mask[g](row, c) != 0.0) r[c] = faults_->input_value[g](row, c);
      }
    }
    row_norms_[g].push_back(0.0);
    refresh_norm(g, row);
  }
  std::vector<double> col(config_.output.count(), 0.0);
  if (faults_) {
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (faults_->output_mask(i, row) != 0.0) col[i] = faults_->output_value(i, row);
    }
  }
  w_out_.append_row(col);
  ++minterms_;
}

TrainOutcome Network::train_one(std::span<const MembershipVector> inputs, const Target& target) {
  check_inputs(inputs);
  const MembershipVector u = target_membership(target);

  TrainOutcome outcome;
  if (minterms_ > 0) {
    const ForwardResult fwd = forward(inputs);
    outcome.pre_update_error = novelty_error(fwd, target);
    if (outcome.pre_update_error < config_.novelty_threshold) {
      outcome.kind = TrainOutcome::Kind::Skipped;
      outcome.hidden = fwd.hidden;
      return outcome;
    }
  }

  append_minterm(inputs);
  outcome.kind = TrainOutcome::Kind::MinTermAdded;
  outcome.index = minterms_ - 1;
  outcome.hidden = hidden(inputs);

  // w_ij += alpha * t(v_j, u_i) over every output neuron i and hidden neuron j.
  const std::size_t nz = config_.output.count();
  for (std::size_t j = 0; j < minterms_; ++j) {
    auto col = w_out_.row(j);
    for (std::size_t i = 0; i < nz; ++i) {
      if (faults_ && faults_->output_mask(i, j) != 0.0) continue;
      const double t = apply_tnorm(config_.hebbian_tnorm, outcome.hidden[j], u[i]);
      col[i] += config_.alpha * t;
    }
  }
  return outcome;
}

TrainingStats Network::train_dataset(std::span<const TrainingSample> samples) {
  TrainingStats stats;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    TrainOutcome o;
    try {
      o = train_one(samples[k].inputs, samples[k].target);
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("sample {}: {}", k, e.what()));
    }
    ++stats.n_samples;
    if (o.kind == TrainOutcome::Kind::MinTermAdded) {
      ++stats.n_minterms_added;
      stats.add_indices.push_back(k);
    }
  }
  return stats;
}

void Network::scale_output_weights(double c) {
  if (!(c > 0.0)) throw Error(Errc::InvalidArgument, "scale factor must be > 0");
  for (double& w : w_out_.data()) w *= c;
}

}  // namespace nfc
