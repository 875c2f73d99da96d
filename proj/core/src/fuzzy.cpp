#include "nfc/fuzzy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "nfc/error.hpp"

namespace nfc {

namespace {

constexpr double kAlignTolerance = 1e-9;

double tansig(double s) { return 2.0 / (1.0 + std::exp(-2.0 * s)) - 1.0; }

}  // namespace

Universe Universe::build(double lo, double hi, double resolution) {
  if (!(resolution > 0.0)) {
    throw Error(Errc::NonPositiveResolution, fmt::format("resolution {} must be > 0", resolution));
  }
  if (!(hi > lo)) {
    throw Error(Errc::EmptyRange, fmt::format("range [{}, {}] is empty", lo, hi));
  }
  const double steps = (hi - lo) / resolution;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > kAlignTolerance * std::max(1.0, std::abs(steps))) {
    throw Error(Errc::MisalignedRange,
                fmt::format("range {} is not a multiple of resolution {}", hi - lo, resolution));
  }
  if (rounded < 1.0) {
    throw Error(Errc::EmptyRange, "universe needs at least two grid points");
  }
  return Universe(lo, hi, resolution, static_cast<std::size_t>(rounded) + 1);
}

Universe Universe::with_count(double lo, double hi, std::size_t count) {
  if (count < 2) throw Error(Errc::EmptyRange, "universe needs at least two grid points");
  if (!(hi > lo)) throw Error(Errc::EmptyRange, fmt::format("range [{}, {}] is empty", lo, hi));
  return build(lo, hi, (hi - lo) / static_cast<double>(count - 1));
}

std::vector<double> Universe::grid() const {
  std::vector<double> g(count_);
  for (std::size_t i = 0; i < count_; ++i) g[i] = point(i);
  return g;
}

bool Universe::contains(double v) const noexcept {
  const double slack = kAlignTolerance * (hi_ - lo_);
  return v >= lo_ - slack && v <= hi_ + slack;
}

std::size_t Universe::nearest(double v) const noexcept {
  const double pos = (v - lo_) / resolution_;
  if (!(pos > 0.0)) return 0;
  const double base = std::floor(pos);
  auto idx = static_cast<std::size_t>(base);
  if (pos - base > 0.5) ++idx;
  return std::min(idx, count_ - 1);
}

MembershipVector::MembershipVector(Universe universe, std::vector<double> values)
    : universe_(universe), values_(std::move(values)) {
  if (values_.size() != universe_.count()) {
    throw Error(Errc::DimensionMismatch,
                fmt::format("membership vector has {} values, universe has {} points",
                            values_.size(), universe_.count()));
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(Errc::OutOfRange, fmt::format("membership value {} outside [0,1]", v));
    }
  }
}

MembershipVector MembershipVector::zeros(const Universe& universe) {
  return MembershipVector(universe, std::vector<double>(universe.count(), 0.0));
}

MembershipVector MembershipVector::singleton(const Universe& universe, std::size_t index) {
  std::vector<double> v(universe.count(), 0.0);
  v.at(index) = 1.0;
  return MembershipVector(universe, std::move(v));
}

bool MembershipVector::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double MembershipVector::peak() const noexcept {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

MembershipVector fuzzify_triangular(const Universe& u, double crisp, double half_support) {
  if (!u.contains(crisp)) {
    throw Error(Errc::OutOfRange,
                fmt::format("crisp value {} outside [{}, {}]", crisp, u.lo(), u.hi()));
  }
  if (half_support < 0.0) {
    throw Error(Errc::NegativeSupport, fmt::format("half support {} < 0", half_support));
  }
  if (half_support == 0.0) return MembershipVector::singleton(u, u.nearest(crisp));

  std::vector<double> values(u.count(), 0.0);
  bool any = false;
  for (std::size_t i = 0; i < u.count(); ++i) {
    const double m = 1.0 - std::abs(u.point(i) - crisp) / half_support;
    if (m > 0.0) {
      values[i] = m;
      any = true;
    }
  }
  if (!any) {
    throw Error(Errc::AllZeroMembership,
                fmt::format("half support {} misses every grid point around {}", half_support, crisp));
  }
  return MembershipVector(u, std::move(values));
}

double defuzzify_centroid(const Universe& u, std::span<const double> weights) {
  if (weights.size() != u.count()) {
    throw Error(Errc::DimensionMismatch, "weights do not match universe size");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    num += weights[i] * u.point(i);
    den += weights[i];
  }
  if (!(den > 0.0)) throw Error(Errc::AllZeroMembership, "no activation to defuzzify");
  return std::clamp(num / den, u.lo(), u.hi());
}

double defuzzify_centroid(const MembershipVector& mv) {
  return defuzzify_centroid(mv.universe(), mv.values());
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "similarity of unequal lengths");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 && nb == 0.0) throw Error(Errc::ZeroVector, "similarity of two zero vectors");
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

double similarity(const MembershipVector& a, const MembershipVector& b) {
  if (!(a.universe() == b.universe())) {
    throw Error(Errc::UniverseMismatch, "similarity across different universes");
  }
  return cosine_similarity(a.values(), b.values());
}

TNorm TNorm::power_sum(int power) {
  if (power < 1) throw Error(Errc::InvalidArgument, fmt::format("power {} < 1", power));
  return TNorm(Kind::PowerSum, power);
}

TNorm TNorm::parse(std::string_view text) {
  if (text == "min") return min();
  if (text == "product") return product();
  if (text == "tansig") return tansig_shifted();
  constexpr std::string_view prefix = "powersum:";
  if (text.starts_with(prefix)) {
    int p = 0;
    const auto digits = text.substr(prefix.size());
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return power_sum(p);
  }
  throw Error(Errc::InvalidArgument, fmt::format("unknown t-norm '{}'", text));
}

std::string TNorm::name() const {
  switch (kind_) {
    case Kind::Min: return "min";
    case Kind::Product: return "product";
    case Kind::PowerSum: return fmt::format("powersum:{}", power_);
    case Kind::TansigShifted: return "tansig";
  }
  return "unknown";
}

double apply_tnorm(const TNorm& op, std::span<const double> operands) {
  if (operands.empty()) throw Error(Errc::EmptyOperands, "t-norm needs at least one operand");
  for (double v : operands) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(Errc::OperandOutOfRange, fmt::format("operand {} outside [0,1]", v));
    }
  }
  const auto n = static_cast<double>(operands.size());
  switch (op.kind()) {
    case TNorm::Kind::Min:
      return *std::min_element(operands.begin(), operands.end());
    case TNorm::Kind::Product:
      return std::accumulate(operands.begin(), operands.end(), 1.0, std::multiplies<>());
    case TNorm::Kind::PowerSum: {
      const double mean = std::accumulate(operands.begin(), operands.end(), 0.0) / n;
      double r = 1.0;
      for (int k = 0; k < op.power(); ++k) r *= mean;
      return r;
    }
    case TNorm::Kind::TansigShifted: {
      // tansig(sum - n - 1): for two operands this is tansig(a + b - 3).
      const double sum = std::accumulate(operands.begin(), operands.end(), 0.0);
      const double lo = tansig(-n - 1.0);
      const double hi = tansig(-1.0);
      return std::clamp((tansig(sum - n - 1.0) - lo) / (hi - lo), 0.0, 1.0);
    }
  }
  return 0.0;
}

double apply_tnorm(const TNorm& op, double a, double b) {
  const double operands[2] = {a, b};
  return apply_tnorm(op, operands);
}

void write_csv(std::ostream& out, const MembershipVector& mv) {
  out << "grid,membership\n";
  for (std::size_t i = 0; i < mv.size(); ++i) {
    out << fmt::format("{},{}\n", mv.universe().point(i), mv[i]);
  }
}

}  // namespace nfc
