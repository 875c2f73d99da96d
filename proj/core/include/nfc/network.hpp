#pragma once

// Two-layer neuro-fuzzy system: input groups -> fuzzy min-terms (hidden
// neurons) -> output universe. Min-terms are grown one per novel training
// sample; output connections are trained with a Hebbian rule.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nfc/fuzzy.hpp"
#include "nfc/matrix.hpp"

namespace nfc {

struct InputGroup {
  std::string name;
  Universe universe;
  /// Triangle half support used when fuzzifying crisp values of this group.
  double half_support = 0.0;

  bool operator==(const InputGroup&) const = default;
};

struct NetworkConfig {
  std::vector<InputGroup> inputs;
  Universe output;
  double output_half_support = 0.0;
  int p = 7;
  double alpha = 0.0005;
  /// Output units for crisp targets; 1 - cosine similarity for fuzzy targets.
  double novelty_threshold = 0.2;
  TNorm hebbian_tnorm = TNorm::product();

  /// Throws InvalidConfig.
  void validate() const;
  std::size_t input_width() const noexcept;

  bool operator==(const NetworkConfig&) const = default;
};

/// Cells of the provisioned crossbars that are distorted and cannot store data.
/// Input cells are indexed [group](row, col) with `capacity` rows; output cells
/// are (output neuron, hidden column) with `capacity` columns.
struct FaultOverlay {
  std::size_t capacity = 0;
  std::vector<Matrix> input_mask;   // 1.0 = faulted
  std::vector<Matrix> input_value;  // value a faulted cell holds
  Matrix output_mask;
  Matrix output_value;

  /// Draws floor(fraction * cells) distinct faulted cells on each crossbar.
  /// Faulted input cells hold U[0,1]; faulted output cells are stuck at zero.
  static FaultOverlay random(const NetworkConfig& config, std::size_t capacity, double fraction,
                             std::uint64_t seed);

  std::size_t faulted_cells() const noexcept;
  std::size_t total_cells() const noexcept;
  bool all_faulted() const noexcept { return faulted_cells() == total_cells(); }

  bool operator==(const FaultOverlay&) const = default;
};

struct ForwardResult {
  std::vector<double> hidden;
  std::vector<double> output;
};

using Target = std::variant<double, MembershipVector>;

struct TrainOutcome {
  enum class Kind { Skipped, MinTermAdded };
  Kind kind = Kind::Skipped;
  std::size_t index = 0;
  /// +inf when the network was empty or produced no output at all.
  double pre_update_error = std::numeric_limits<double>::infinity();
  std::vector<double> hidden;
};

struct TrainingSample {
  std::vector<MembershipVector> inputs;
  Target target;
};

struct TrainingStats {
  std::size_t n_samples = 0;
  std::size_t n_minterms_added = 0;
  std::vector<std::size_t> add_indices;
};

class Network {
 public:
  explicit Network(NetworkConfig config);
  Network(NetworkConfig config, FaultOverlay faults);

  const NetworkConfig& config() const noexcept { return config_; }
  std::size_t minterm_count() const noexcept { return minterms_; }
  const std::optional<FaultOverlay>& faults() const noexcept { return faults_; }

  /// Stored min-term row of one input group.
  std::span<const double> input_row(std::size_t group, std::size_t row) const;
  /// Output weight between output neuron i and hidden neuron j.
  double output_weight(std::size_t i, std::size_t j) const;
  const Matrix& input_weights(std::size_t group) const { return w_in_.at(group); }
  /// Output weights as stored: one row per hidden neuron, nz entries each.
  const Matrix& output_weights_by_hidden() const noexcept { return w_out_; }

  /// Fuzzifies crisp inputs with each group's half support.
  std::vector<MembershipVector> fuzzify(std::span<const double> crisp) const;

  std::vector<double> hidden(std::span<const MembershipVector> inputs) const;
  ForwardResult forward(std::span<const MembershipVector> inputs) const;
  /// Throws AllZeroMembership when no min-term responds to the input.
  double infer_crisp(std::span<const MembershipVector> inputs) const;
  /// Argmax over raw outputs, ties to the lower index. Throws Unclassifiable.
  std::size_t classify(std::span<const MembershipVector> inputs) const;

  TrainOutcome train_one(std::span<const MembershipVector> inputs, const Target& target);
  TrainingStats train_dataset(std::span<const TrainingSample> samples);

  /// Multiplies every output weight by c > 0.
  void scale_output_weights(double c);

  /// Restores a state from its parts (used by deserialization).
  static Network restore(NetworkConfig config, std::vector<Matrix> w_in, Matrix w_out_by_hidden,
                         std::optional<FaultOverlay> faults);

  bool operator==(const Network& other) const;

 private:
  void check_inputs(std::span<const MembershipVector> inputs) const;
  void append_minterm(std::span<const MembershipVector> inputs);
  void refresh_norm(std::size_t group, std::size_t row);
  MembershipVector target_membership(const Target& target) const;
  double novelty_error(const ForwardResult& fwd, const Target& target) const;

  NetworkConfig config_;
  std::size_t minterms_ = 0;
  std::vector<Matrix> w_in_;           // per group: minterms x count
  std::vector<std::vector<double>> row_norms_;
  Matrix w_out_;                       // minterms x nz (transposed W_out)
  std::optional<FaultOverlay> faults_;
};

}  // namespace nfc
