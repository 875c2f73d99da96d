#include "nfc/mapping.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "nfc/error.hpp"

namespace nfc {

namespace {

double auto_scale(double requested, double max_weight, const MemristorParams& p, double headroom) {
  if (requested > 0.0) return requested;
  if (!(headroom > 0.0 && headroom <= 1.0)) {
    throw Error(Errc::InvalidArgument, fmt::format("headroom {} outside (0,1]", headroom));
  }
  if (max_weight <= 0.0) return headroom * (p.g_on() - p.g_off());
  return headroom * (p.g_on() - p.g_off()) / max_weight;
}

void write_cell(Crossbar& cb, std::size_t i, std::size_t j, double w, double scale,
                const WriteVerify& wv) {
  if (!(w >= 0.0)) {
    throw Error(Errc::WeightOutOfRange, fmt::format("negative weight {} at ({}, {})", w, i, j));
  }
  if (w == 0.0) return;
  const double g = cb.params().g_off() + scale * w;
  if (g > cb.params().g_on() * (1.0 + 1e-12)) {
    throw Error(Errc::WeightOutOfRange,
                fmt::format("weight {} at ({}, {}) needs M below R_on", w, i, j));
  }
  cb.program_conductance(i, j, std::min(g, cb.params().g_on()), wv);
}

}  // namespace

double MappedNetwork::input_readback(std::size_t row, std::size_t col) const {
  return (input_xbar.conductance(row, col) - input_xbar.params().g_off()) / input_scale;
}

double MappedNetwork::output_readback(std::size_t i, std::size_t j) const {
  return (output_xbar.conductance(i, j) - output_xbar.params().g_off()) / output_scale;
}

MappedNetwork map_network(const Network& net, const MemristorParams& params, double r_f,
                          const MapOptions& options) {
  const NetworkConfig& cfg = net.config();
  const std::size_t n = net.minterm_count();
  const std::size_t capacity = options.capacity == 0 ? n : options.capacity;
  if (n > capacity) {
    throw Error(Errc::CapacityExceeded,
                fmt::format("{} min-terms exceed {} provisioned rows", n, capacity));
  }
  if (!(options.v_read > 0.0 && options.v_read < params.v_threshold)) {
    throw Error(Errc::InvalidArgument, "read voltage must lie strictly between 0 and threshold");
  }
  const std::size_t nz = cfg.output.count();

  double max_in = 0.0;
  for (std::size_t g = 0; g < cfg.inputs.size(); ++g) {
    for (double w : net.input_weights(g).data()) max_in = std::max(max_in, w);
  }
  double max_out = 0.0;
  for (double w : net.output_weights_by_hidden().data()) max_out = std::max(max_out, w);

  MappedNetwork m{
      .config = cfg,
      .minterms = n,
      .input_xbar = Crossbar(capacity, cfg.input_width(), params, r_f),
      .output_xbar = Crossbar(nz, capacity, params, r_f),
      .input_scale = auto_scale(options.input_scale, max_in, params, options.headroom),
      .output_scale = auto_scale(options.output_scale, max_out, params, options.headroom),
      .v_read = options.v_read,
      .row_norms = {},
  };

  std::size_t offset = 0;
  for (std::size_t g = 0; g < cfg.inputs.size(); ++g) {
    const Matrix& w = net.input_weights(g);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < w.cols(); ++c) {
        write_cell(m.input_xbar, r, offset + c, w(r, c), m.input_scale, options.write);
      }
    }
    offset += w.cols();
  }
  const Matrix& wo = net.output_weights_by_hidden();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < nz; ++i) {
      write_cell(m.output_xbar, i, j, wo(j, i), m.output_scale, options.write);
    }
  }

  offset = 0;
  m.row_norms.resize(cfg.inputs.size());
  for (std::size_t g = 0; g < cfg.inputs.size(); ++g) {
    const std::size_t cols = cfg.inputs[g].universe.count();
    m.row_norms[g].resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < cols; ++c) {
        const double w = m.input_readback(r, offset + c);
        s += w * w;
      }
      m.row_norms[g][r] = std::sqrt(s);
    }
    offset += cols;
  }
  return m;
}

ForwardResult crossbar_forward(const MappedNetwork& m, std::span<const MembershipVector> inputs) {
  const NetworkConfig& cfg = m.config;
  if (inputs.size() != cfg.inputs.size()) {
    throw Error(Errc::UniverseMismatch,
                fmt::format("{} inputs for {} groups", inputs.size(), cfg.inputs.size()));
  }
  if (m.minterms == 0) throw Error(Errc::UntrainedNetwork, "network has no min-terms");
  const double g_off = m.input_xbar.params().g_off();
  const double r_f = m.input_xbar.r_f();

  std::vector<std::vector<double>> sims(cfg.inputs.size());
  std::vector<double> drive(m.input_xbar.cols(), 0.0);
  std::size_t offset = 0;
  for (std::size_t g = 0; g < inputs.size(); ++g) {
    if (!(inputs[g].universe() == cfg.inputs[g].universe)) {
      throw Error(Errc::UniverseMismatch,
                  fmt::format("input '{}' uses a different universe", cfg.inputs[g].name));
    }
    const auto mu = inputs[g].values();
    std::fill(drive.begin(), drive.end(), 0.0);
    double v_sum = 0.0;
    double mu_norm = 0.0;
    for (std::size_t c = 0; c < mu.size(); ++c) {
      drive[offset + c] = m.v_read * mu[c];
      v_sum += drive[offset + c];
      mu_norm += mu[c] * mu[c];
    }
    mu_norm = std::sqrt(mu_norm);
    const auto currents = m.input_xbar.vmm(drive);
    sims[g].resize(m.minterms);
    for (std::size_t r = 0; r < m.minterms; ++r) {
      // Sign-correcting stage, then remove the all-R_off baseline.
      const double dot = (-currents[r] - r_f * g_off * v_sum) / (r_f * m.input_scale * m.v_read);
      const double denom = m.row_norms[g][r] * mu_norm;
      sims[g][r] = denom == 0.0 ? 0.0 : std::clamp(dot / denom, 0.0, 1.0);
    }
    offset += mu.size();
  }

  ForwardResult out;
  out.hidden.resize(m.minterms);
  const TNorm activation = TNorm::power_sum(cfg.p);
  std::vector<double> per_group(inputs.size());
  for (std::size_t r = 0; r < m.minterms; ++r) {
    for (std::size_t g = 0; g < inputs.size(); ++g) per_group[g] = sims[g][r];
    out.hidden[r] = apply_tnorm(activation, per_group);
  }

  std::vector<double> hdrive(m.output_xbar.cols(), 0.0);
  double v_sum = 0.0;
  for (std::size_t j = 0; j < m.minterms; ++j) {
    hdrive[j] = m.v_read * out.hidden[j];
    v_sum += hdrive[j];
  }
  const auto currents = m.output_xbar.vmm(hdrive);
  out.output.resize(currents.size());
  for (std::size_t i = 0; i < currents.size(); ++i) {
    out.output[i] = (-currents[i] - r_f * g_off * v_sum) / (r_f * m.output_scale * m.v_read);
  }
  return out;
}

}  // namespace nfc
