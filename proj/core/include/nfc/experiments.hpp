#pragma once

// Experiment protocols: function modeling, classification, training with
// noisy data, training on partially distorted crossbars, and a comparison of
// the crossbar backend against the ideal network.

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nfc/benchmarks.hpp"
#include "nfc/crossbar_network.hpp"
#include "nfc/mapping.hpp"
#include "nfc/memristor.hpp"
#include "nfc/network.hpp"

namespace nfc {

enum class ExperimentKind { Modeling, Classification, Noise, Fault };
enum class Backend { Ideal, Crossbar };

std::string to_string(ExperimentKind kind);
std::string to_string(Backend backend);
/// Throws InvalidArgument.
ExperimentKind parse_experiment_kind(std::string_view text);
Backend parse_backend(std::string_view text);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Modeling;
  /// "g1".."g5" for function experiments, "1".."4" for classification.
  std::string target = "g1";
  std::size_t n_train = 225;
  std::size_t n_test = 10000;
  std::uint64_t seed = 1;

  int p = 7;
  double alpha = 0.0005;
  double threshold = 0.2;
  std::size_t nx = 100;
  std::size_t ny = 100;
  /// Output neurons; classification always uses one per class.
  std::size_t nz = 116;
  /// Fuzzification half supports as multiples of the universe resolution.
  double input_support = 10.0;
  double output_support = 1.0;

  double noise_variance = 0.0;
  double fault_fraction = 0.0;

  Backend backend = Backend::Ideal;
  MemristorParams memristor{};
  /// Capacity 0 provisions n_train rows.
  HardwareOptions hardware{};

  /// Side length of the (x, y, predicted, actual) grid to record; 0 = none.
  std::size_t surface_grid = 0;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Published settings for the given experiment, with the noise variance /
/// fault fraction of the matching study. `n_train` 0 keeps the table default.
ExperimentConfig paper_defaults(ExperimentKind kind, std::string_view target,
                                std::size_t n_train = 0);

/// Universes and fuzzification widths an experiment trains with.
NetworkConfig network_config(const ExperimentConfig& config);

struct SurfacePoint {
  double x = 0.0;
  double y = 0.0;
  double predicted = 0.0;
  double actual = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::size_t n_minterms = 0;
  /// FVU, or classification rate in percent.
  double metric = 0.0;
  bool metric_is_rate = false;
  std::optional<double> paper_value;
  std::optional<std::size_t> paper_minterms;
  /// Test points no min-term responded to (scored at the output midpoint, or
  /// counted wrong when classifying).
  std::size_t untrained_points = 0;
  std::array<std::size_t, 2> class_correct{};
  std::array<std::size_t, 2> class_total{};
  double runtime_ms = 0.0;
  std::string status = "ok";
  std::vector<SurfacePoint> surface;
  /// Trained model (ideal backend only).
  std::shared_ptr<const Network> network;
};

ExperimentReport run_modeling(const ExperimentConfig& config);
ExperimentReport run_classification(const ExperimentConfig& config);
ExperimentReport run_noise(const ExperimentConfig& config);
ExperimentReport run_fault(const ExperimentConfig& config);
/// Dispatches on config.kind.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct CrossbarComparison {
  std::size_t minterms = 0;
  std::size_t probes = 0;
  std::size_t outputs_compared = 0;
  std::size_t outputs_outside_tolerance = 0;
  /// Outputs whose ideal value is within 1e-12 of the largest output.
  std::size_t outputs_at_floor = 0;
  /// Relative deviations over the remaining outputs.
  double max_output_deviation = 0.0;
  double mean_output_deviation = 0.0;
  double max_hidden_deviation = 0.0;
  double input_scale = 0.0;
  double output_scale = 0.0;
};

/// Compares ideal and crossbar forward passes at the given crisp inputs. An
/// output passes when |hw - ideal| <= tolerance * |ideal| + 1e-12 * max|ideal|.
CrossbarComparison compare_crossbar(const Network& net, const MappedNetwork& mapped,
                                    std::span<const Point> probes, double tolerance = 0.05);

/// Trains the ideal model of a modeling config, maps it onto crossbars and
/// compares at `probes` random inputs drawn from the config's test stream.
CrossbarComparison compare_crossbar(const ExperimentConfig& config, double r_f,
                                    std::size_t probes, const MapOptions& options = {},
                                    double tolerance = 0.05);

}  // namespace nfc
