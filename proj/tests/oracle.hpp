#pragma once

// Straight-line reference implementations used to check the library. Nothing
// here calls into nfc; every formula is written out from its definition.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

inline double triangle(double grid, double centre, double half) {
  if (half == 0.0) return grid == centre ? 1.0 : 0.0;
  return std::max(0.0, 1.0 - std::abs(grid - centre) / half);
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double cosine(const Vec& a, const Vec& b) {
  const double na = std::sqrt(dot(a, a));
  const double nb = std::sqrt(dot(b, b));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot(a, b) / (na * nb), 0.0, 1.0);
}

inline double centroid(const Vec& grid, const Vec& w) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    num += grid[i] * w[i];
    den += w[i];
  }
  return num / den;
}

struct Forward {
  Vec hidden;
  Vec output;
};

/// rows[j][g] is min-term j's stored row for group g; w_out[i][j] connects
/// hidden neuron j to output neuron i.
inline Forward reference_forward(const std::vector<std::vector<Vec>>& rows,
                                 const std::vector<Vec>& w_out, const std::vector<Vec>& inputs,
                                 int p) {
  Forward f;
  for (const auto& minterm : rows) {
    double sum = 0.0;
    for (std::size_t g = 0; g < inputs.size(); ++g) sum += cosine(minterm[g], inputs[g]);
    f.hidden.push_back(std::pow(sum / static_cast<double>(inputs.size()), p));
  }
  for (const auto& row : w_out) {
    double s = 0.0;
    for (std::size_t j = 0; j < f.hidden.size(); ++j) s += row[j] * f.hidden[j];
    f.output.push_back(s);
  }
  return f;
}

/// Threshold HP device integrated with a fixed small step.
struct Device {
  double r_on = 100.0;
  double r_off = 16e3;
  double thickness = 10e-9;
  double mobility = 1e-14;
  double v_threshold = 1.0;
};

inline double integrate(const Device& d, double x, double v, double duration, double dt) {
  if (std::abs(v) <= d.v_threshold) return x;
  const double k = d.mobility * d.r_on / (d.thickness * d.thickness);
  const auto n = static_cast<long>(std::llround(duration / dt));
  for (long s = 0; s < n; ++s) {
    const double m = d.r_on * x + d.r_off * (1.0 - x);
    x = std::clamp(x + k * (v / m) * dt, 0.0, 1.0);
  }
  return x;
}

/// Closed form of the same drift while x stays inside (0,1):
/// R_off x - (R_off - R_on) x^2 / 2 = k v t.
inline double drift_closed_form(const Device& d, double v, double t) {
  const double k = d.mobility * d.r_on / (d.thickness * d.thickness);
  const double a = 0.5 * (d.r_off - d.r_on);
  const double c = k * v * t;
  return (d.r_off - std::sqrt(d.r_off * d.r_off - 4.0 * a * c)) / (2.0 * a);
}

inline double fvu(const Vec& predicted, const Vec& actual) {
  double mean = 0.0;
  for (double a : actual) mean += a;
  mean /= static_cast<double>(actual.size());
  double err = 0.0;
  double dev = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    err += (predicted[i] - actual[i]) * (predicted[i] - actual[i]);
    dev += (actual[i] - mean) * (actual[i] - mean);
  }
  return err / dev;
}

/// True when some straight line puts every label-0 point strictly on one
/// side and every label-1 point on the other (sweep of 3600 directions).
template <typename P>
bool linearly_separable(const std::vector<P>& pts, const std::vector<int>& labels) {
  constexpr double kPi = 3.14159265358979323846;
  for (int a = 0; a < 3600; ++a) {
    const double th = kPi * a / 1800.0;
    const double cx = std::cos(th);
    const double cy = std::sin(th);
    double max0 = -1e300;
    double min1 = 1e300;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double t = cx * pts[i].x + cy * pts[i].y;
      if (labels[i] == 0) max0 = std::max(max0, t);
      else min1 = std::min(min1, t);
    }
    if (max0 < min1) return true;
  }
  return false;
}

}  // namespace oracle
