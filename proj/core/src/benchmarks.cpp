#include "nfc/benchmarks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "nfc/error.hpp"

namespace nfc {

BenchmarkId parse_benchmark(std::string_view text) {
  if (text.size() == 2 && (text[0] == 'g' || text[0] == 'G') && text[1] >= '1' && text[1] <= '5') {
    return static_cast<BenchmarkId>(text[1] - '0');
  }
  throw Error(Errc::InvalidArgument, fmt::format("unknown function '{}' (expected g1..g5)", text));
}

std::string to_string(BenchmarkId id) { return fmt::format("g{}", static_cast<int>(id)); }

namespace {

double eval_unchecked(BenchmarkId id, double x, double y) {
  using std::numbers::pi;
  switch (id) {
    case BenchmarkId::G1:
      return 10.391 * ((x - 0.4) * (y - 0.6) + 0.36);
    case BenchmarkId::G2: {
      const double r2 = (x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5);
      return 24.234 * (r2 * (0.75 - r2));
    }
    case BenchmarkId::G3: {
      const double xt = x - 0.5;
      const double yt = y - 0.5;
      const double x2 = xt * xt;
      const double y2 = yt * yt;
      return 42.659 * (0.1 + xt * (0.05 + x2 * x2 - 10.0 * x2 * y2 + 5.0 * y2 * y2));
    }
    case BenchmarkId::G4:
      return 1.3356 * (1.5 * (1.0 - x) +
                       std::exp(2.0 * x - 1.0) * std::sin(3.0 * pi * (x - 0.6) * (x - 0.6))) +
             1.3356 * (std::exp(3.0 * (y - 0.5)) * std::sin(4.0 * pi * (y - 0.9) * (y - 0.9)));
    case BenchmarkId::G5:
      return 1.9 * (1.35 + std::exp(x) * std::sin(13.0 * (x - 0.6) * (x - 0.6)) * std::exp(-y) *
                               std::sin(7.0 * y));
  }
  throw Error(Errc::InvalidArgument, "unknown benchmark id");
}

ValueRange scan_range(BenchmarkId id) {
  constexpr int n = 2001;
  ValueRange r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double v = eval_unchecked(id, x, static_cast<double>(j) / (n - 1));
      r.lo = std::min(r.lo, v);
      r.hi = std::max(r.hi, v);
    }
  }
  return r;
}

}  // namespace

double eval_benchmark(BenchmarkId id, double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    throw Error(Errc::DomainViolation, fmt::format("({}, {}) outside [0,1]^2", x, y));
  }
  return eval_unchecked(id, x, y);
}

ValueRange benchmark_range(BenchmarkId id) {
  static const std::array<ValueRange, 5> ranges = [] {
    std::array<ValueRange, 5> out{};
    for (int k = 0; k < 5; ++k) out[k] = scan_range(static_cast<BenchmarkId>(k + 1));
    return out;
  }();
  return ranges.at(static_cast<std::size_t>(id) - 1);
}

double fvu(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size()) {
    throw Error(Errc::LengthMismatch,
                fmt::format("{} predictions for {} actual values", predicted.size(), actual.size()));
  }
  if (actual.size() < 2) throw Error(Errc::LengthMismatch, "FVU needs at least two points");
  double mean = 0.0;
  for (double a : actual) mean += a;
  mean /= static_cast<double>(actual.size());
  double err = 0.0;
  double dev = 0.0;
  for (std::size_t k = 0; k < actual.size(); ++k) {
    err += (actual[k] - predicted[k]) * (actual[k] - predicted[k]);
    dev += (actual[k] - mean) * (actual[k] - mean);
  }
  if (dev == 0.0) throw Error(Errc::ConstantActual, "actual values are constant");
  return err / dev;
}

}  // namespace nfc
