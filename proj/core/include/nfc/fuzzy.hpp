#pragma once

// Discretized universes, membership vectors and the t-norm family shared by
// the ideal network and the crossbar backend.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nfc {

/// Discretized axis of one linguistic variable: one neuron per grid point
/// lo, lo + resolution, ..., hi.
class Universe {
 public:
  /// Two-point unit axis {0, 1}.
  Universe() : Universe(0.0, 1.0, 1.0, 2) {}

  /// Throws NonPositiveResolution, EmptyRange or MisalignedRange.
  static Universe build(double lo, double hi, double resolution);
  /// Grid with exactly `count` points spanning [lo, hi].
  static Universe with_count(double lo, double hi, std::size_t count);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double resolution() const noexcept { return resolution_; }
  std::size_t count() const noexcept { return count_; }

  double point(std::size_t i) const noexcept { return lo_ + static_cast<double>(i) * resolution_; }
  std::vector<double> grid() const;
  double midpoint() const noexcept { return 0.5 * (lo_ + hi_); }

  bool contains(double v) const noexcept;
  /// Index of the grid point nearest to v (clamped); ties go to the lower index.
  std::size_t nearest(double v) const noexcept;

  bool operator==(const Universe&) const = default;

 private:
  Universe(double lo, double hi, double resolution, std::size_t count)
      : lo_(lo), hi_(hi), resolution_(resolution), count_(count) {}

  double lo_;
  double hi_;
  double resolution_;
  std::size_t count_;
};

/// Sampled membership function over a universe. Every value lies in [0,1].
class MembershipVector {
 public:
  /// Throws DimensionMismatch on length mismatch, OutOfRange on values outside [0,1].
  MembershipVector(Universe universe, std::vector<double> values);

  static MembershipVector zeros(const Universe& universe);
  static MembershipVector singleton(const Universe& universe, std::size_t index);

  const Universe& universe() const noexcept { return universe_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  bool is_zero() const noexcept;
  double peak() const noexcept;

  bool operator==(const MembershipVector&) const = default;

 private:
  Universe universe_;
  std::vector<double> values_;
};

/// Symmetric triangle of the given half support centred at `crisp`;
/// half_support == 0 yields a singleton at the nearest grid point.
/// Throws OutOfRange, NegativeSupport, or AllZeroMembership when the triangle
/// misses every grid point.
MembershipVector fuzzify_triangular(const Universe& u, double crisp, double half_support);

/// Membership-weighted mean grid position. Accepts any non-negative weights so
/// raw (unbounded) network outputs can be defuzzified directly.
double defuzzify_centroid(const Universe& u, std::span<const double> weights);
double defuzzify_centroid(const MembershipVector& mv);

/// Cosine similarity of two non-negative vectors, clamped into [0,1].
/// Returns 0 if exactly one vector is zero; throws ZeroVector if both are.
double cosine_similarity(std::span<const double> a, std::span<const double> b);
double similarity(const MembershipVector& a, const MembershipVector& b);

class TNorm {
 public:
  enum class Kind { Min, Product, PowerSum, TansigShifted };

  static TNorm min() noexcept { return TNorm(Kind::Min, 1); }
  static TNorm product() noexcept { return TNorm(Kind::Product, 1); }
  /// Normalized (sum / n)^power. Throws InvalidArgument for power < 1.
  static TNorm power_sum(int power);
  static TNorm tansig_shifted() noexcept { return TNorm(Kind::TansigShifted, 1); }

  /// Accepts "min", "product", "tansig", "powersum:<p>".
  static TNorm parse(std::string_view text);
  std::string name() const;

  Kind kind() const noexcept { return kind_; }
  int power() const noexcept { return power_; }

  bool operator==(const TNorm&) const = default;

 private:
  TNorm(Kind kind, int power) noexcept : kind_(kind), power_(power) {}

  Kind kind_;
  int power_;
};

/// Applies the operator to operands in [0,1]; result in [0,1], all-ones -> 1.
/// Throws EmptyOperands or OperandOutOfRange.
double apply_tnorm(const TNorm& op, std::span<const double> operands);
double apply_tnorm(const TNorm& op, double a, double b);

/// Writes "grid,membership" rows (with header) for plotting.
void write_csv(std::ostream& out, const MembershipVector& mv);

}  // namespace nfc
