#pragma once

// Two-input test surfaces on [0,1]^2, the FVU metric and sample generators.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nfc {

enum class BenchmarkId { G1 = 1, G2, G3, G4, G5 };

/// Accepts "g1".."g5". Throws InvalidArgument.
BenchmarkId parse_benchmark(std::string_view text);
std::string to_string(BenchmarkId id);

/// Throws DomainViolation outside [0,1]^2.
double eval_benchmark(BenchmarkId id, double x, double y);

struct ValueRange {
  double lo = 0.0;
  double hi = 0.0;
};

/// Min / max over a 2001 x 2001 grid of the unit square (computed once).
ValueRange benchmark_range(BenchmarkId id);

/// Fraction of variance unexplained. Throws LengthMismatch (also for fewer
/// than two points) or ConstantActual.
double fvu(std::span<const double> predicted, std::span<const double> actual);

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

/// Which independent stream of a seed to draw from. Train draws are
/// prefix-consistent: the first n points do not depend on how many follow.
enum class Split { Train, Test };

/// Uniform points on [0,1]^2. Throws InvalidArgument for n == 0.
std::vector<Point> gen_uniform_samples(std::size_t n, std::uint64_t seed, Split split = Split::Train);

struct LabeledSet {
  std::vector<Point> points;
  std::vector<int> labels;  // 0 or 1
};

/// Synthetic two-class sets: 1 Gaussian blobs, 2 interleaved crescents,
/// 3 concentric annuli, 4 XOR clusters. Labels are equiprobable. Throws
/// UnknownDatasetId, InvalidArgument for n < 2.
LabeledSet gen_classification_dataset(int id, std::size_t n, std::uint64_t seed,
                                      Split split = Split::Train);

}  // namespace nfc
