#pragma once

// Published reference results used in report comparisons.

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "nfc/benchmarks.hpp"

namespace nfc::reference {

struct ModelingRow {
  std::size_t nx;
  std::size_t ny;
  std::size_t nz;
  double threshold;
  double fvu;
  std::size_t minterms;
};

/// Indexed by function (g1..g5), 225 training points.
inline constexpr std::array<ModelingRow, 5> kModeling{{
    {100, 100, 116, 0.2, 0.067, 77},
    {100, 100, 69, 0.1, 0.044, 161},
    {100, 100, 143, 0.1, 0.263, 140},
    {100, 100, 105, 0.2, 0.087, 123},
    {100, 100, 126, 0.15, 0.09, 130},
}};

struct SampleSizeRow {
  BenchmarkId fn;
  std::size_t n_train;
  double fvu;
  std::size_t minterms;
};

inline constexpr std::array<SampleSizeRow, 6> kSampleSize{{
    {BenchmarkId::G1, 400, 0.026, 194},
    {BenchmarkId::G1, 700, 0.021, 238},
    {BenchmarkId::G3, 400, 0.153, 216},
    {BenchmarkId::G3, 700, 0.117, 245},
    {BenchmarkId::G5, 400, 0.058, 189},
    {BenchmarkId::G5, 700, 0.036, 229},
}};

struct ClassificationRow {
  std::size_t nx;
  std::size_t ny;
  std::size_t n_train;
  std::size_t minterms;
  double rate;
};

/// Indexed by dataset id - 1.
inline constexpr std::array<ClassificationRow, 4> kClassification{{
    {100, 100, 335, 52, 99.8},
    {90, 90, 200, 45, 99.36},
    {98, 98, 1000, 107, 99.64},
    {94, 94, 600, 40, 95.83},
}};

/// Noise variance 0.01 on every training pair.
inline constexpr std::array<double, 5> kNoiseFvu{0.281, 0.394, 0.727, 0.586, 0.61};
inline constexpr double kNoiseVariance = 0.01;

/// 20% of cross-points distorted.
inline constexpr std::array<double, 5> kFaultFvu{0.212, 0.096, 0.357, 0.144, 0.228};
inline constexpr std::array<std::size_t, 5> kFaultMinterms{96, 186, 156, 152, 139};
inline constexpr double kFaultFraction = 0.2;

/// FVU of conventional learners on g1..g5, for side-by-side reporting only.
struct BaselineRow {
  std::string_view model;
  std::array<double, 5> fvu;
};

inline constexpr std::array<BaselineRow, 24> kBaselines{{
    {"BPL Gauss-Newton, 5 hidden", {0.001, 0.065, 0.506, 0.080, 0.142}},
    {"BPL Gauss-Newton, 10 hidden", {0.001, 0.002, 0.183, 0.003, 0.021}},
    {"PPL supersmoother, 3 hidden", {0.000, 0.010, 0.355, 0.021, 0.135}},
    {"PPL supersmoother, 5 hidden", {0.000, 0.007, 0.248, 0.000, 0.028}},
    {"PPL Hermite, 3 hidden", {0.000, 0.009, 0.075, 0.001, 0.049}},
    {"PPL Hermite, 5 hidden", {0.000, 0.000, 0.000, 0.001, 0.015}},
    {"CFNN S1", {0.021, 0.029, 0.269, 0.036, 0.121}},
    {"CFNN sqrt(S1)", {0.011, 0.028, 0.247, 0.037, 0.111}},
    {"CFNN S2", {0.095, 0.426, 0.547, 0.636, 0.610}},
    {"CFNN sqrt(S2)", {0.024, 0.031, 0.275, 0.031, 0.134}},
    {"CFNN S3", {0.003, 0.020, 0.306, 0.027, 0.160}},
    {"CFNN sqrt(S3)", {0.003, 0.018, 0.288, 0.030, 0.167}},
    {"CFNN S_cascor", {0.025, 0.027, 0.265, 0.031, 0.121}},
    {"CFNN S_fujita", {0.004, 0.047, 0.444, 0.070, 0.246}},
    {"CFNN S_sqr", {0.007, 0.038, 0.573, 0.185, 0.294}},
    {"CFNN sigmoidal, 10 hidden", {0.048, 0.097, 0.551, 0.073, 0.206}},
    {"CFNN Hermite, 10 hidden", {0.031, 0.027, 0.197, 0.076, 0.095}},
    {"CFNN sigmoidal, 20 hidden", {0.043, 0.048, 0.303, 0.050, 0.111}},
    {"CFNN Hermite, 20 hidden", {0.026, 0.019, 0.082, 0.027, 0.039}},
    {"ALM, 6 partitions", {0.014, 0.031, 0.153, 0.057, 0.076}},
    {"ALM, 7 partitions", {0.015, 0.027, 0.132, 0.060, 0.062}},
    {"ALM, 8 partitions", {0.021, 0.032, 0.129, 0.061, 0.063}},
    {"ALM, 9 partitions", {0.027, 0.035, 0.122, 0.067, 0.064}},
    {"ANFIS, 9 rules", {0.000, 0.002, 0.033, 0.008, 0.089}},
}};

inline const ModelingRow& modeling(BenchmarkId fn) {
  return kModeling[static_cast<std::size_t>(fn) - 1];
}

inline std::optional<SampleSizeRow> sample_size(BenchmarkId fn, std::size_t n_train) {
  for (const auto& r : kSampleSize) {
    if (r.fn == fn && r.n_train == n_train) return r;
  }
  return std::nullopt;
}

}  // namespace nfc::reference
