#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "nfc/benchmarks.hpp"
#include "nfc/error.hpp"
#include "rng.hpp"

namespace nfc {

namespace {

StreamTag tag_of(Split split) { return split == Split::Train ? StreamTag::Train : StreamTag::Test; }

Point clip(double x, double y) { return {std::clamp(x, 0.0, 1.0), std::clamp(y, 0.0, 1.0)}; }

Point draw(int id, int label, Rng& rng) {
  using std::numbers::pi;
  switch (id) {
    case 1: {
      const double cx = label == 0 ? 0.3 : 0.7;
      const double cy = label == 0 ? 0.35 : 0.65;
      const double dx = normal(rng);
      const double dy = normal(rng);
      return clip(cx + 0.08 * dx, cy + 0.08 * dy);
    }
    case 2: {
      const double t = pi * uniform01(rng);
      double qx = label == 0 ? std::cos(t) : 1.0 - std::cos(t);
      double qy = label == 0 ? std::sin(t) : 0.5 - std::sin(t);
      qx += 0.08 * normal(rng);
      qy += 0.08 * normal(rng);
      return clip((qx + 1.0) / 3.0 * 0.9 + 0.05, (qy + 0.75) / 2.0 * 0.9 + 0.05);
    }
    case 3: {
      const double r = label == 0 ? uniform(rng, 0.05, 0.18) : uniform(rng, 0.28, 0.42);
      const double t = 2.0 * pi * uniform01(rng);
      return clip(0.5 + r * std::cos(t), 0.5 + r * std::sin(t));
    }
    case 4: {
      const auto q = static_cast<int>(uniform_index(rng, 2));
      const double cx = q == 0 ? 0.27 : 0.73;
      const double cy = (q ^ label) == 0 ? 0.27 : 0.73;
      const double dx = normal(rng);
      const double dy = normal(rng);
      return clip(cx + 0.1 * dx, cy + 0.1 * dy);
    }
    default:
      throw Error(Errc::UnknownDatasetId, fmt::format("dataset {} (expected 1..4)", id));
  }
}

}  // namespace

std::vector<Point> gen_uniform_samples(std::size_t n, std::uint64_t seed, Split split) {
  if (n == 0) throw Error(Errc::InvalidArgument, "sample count must be >= 1");
  Rng rng = make_stream(seed, tag_of(split));
  std::vector<Point> out(n);
  for (auto& p : out) {
    p.x = uniform01(rng);
    p.y = uniform01(rng);
  }
  return out;
}

LabeledSet gen_classification_dataset(int id, std::size_t n, std::uint64_t seed, Split split) {
  if (id < 1 || id > 4) {
    throw Error(Errc::UnknownDatasetId, fmt::format("dataset {} (expected 1..4)", id));
  }
  if (n < 2) throw Error(Errc::InvalidArgument, "classification set needs n >= 2");
  Rng rng = make_stream(seed, tag_of(split), static_cast<std::uint64_t>(id));
  LabeledSet set;
  set.points.reserve(n);
  set.labels.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto label = static_cast<int>(uniform_index(rng, 2));
    set.points.push_back(draw(id, label, rng));
    set.labels.push_back(label);
  }
  return set;
}

}  // namespace nfc
