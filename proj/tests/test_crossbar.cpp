#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "nfc/crossbar.hpp"
#include "support.hpp"

using nfc::Crossbar;
using nfc::Errc;
using nfc::MemristorParams;
using test::error_code;

namespace {

void set_memristance(Crossbar& cb, std::size_t i, std::size_t j, double m) {
  cb.set_device(i, j, nfc::state_for_conductance(cb.params(), 1.0 / m));
}

Crossbar random_crossbar(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Crossbar cb(rows, cols, MemristorParams{}, 16e3);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> x(0.0, 1.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) cb.set_device(i, j, {x(rng)});
  }
  return cb;
}

}  // namespace

TEST_SUITE("crossbar") {

TEST_CASE("vmm") {
  Crossbar zero(3, 4, MemristorParams{}, 16e3);
  for (double o : zero.vmm(std::vector<double>(4, 0.0))) CHECK(o == 0.0);

  Crossbar unit(1, 1, MemristorParams{}, 8050.0);
  set_memristance(unit, 0, 0, 8050.0);
  CHECK(unit.weight(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(unit.vmm(std::vector<double>{0.7})[0] == doctest::Approx(-0.7).epsilon(1e-12));

  Crossbar pair(1, 2, MemristorParams{}, 2000.0);
  set_memristance(pair, 0, 0, 4000.0);
  set_memristance(pair, 0, 1, 8000.0);
  CHECK(pair.vmm(std::vector<double>{0.4, 0.8})[0] == doctest::Approx(-0.4).epsilon(1e-12));
}

TEST_CASE("vmm guards") {
  Crossbar cb(2, 2, MemristorParams{}, 16e3);
  CHECK(error_code([&] { cb.vmm(std::vector<double>{1.0, 0.0}); }) == Errc::ReadDisturbRisk);
  CHECK(error_code([&] { cb.vmm(std::vector<double>{0.0, -1.2}); }) == Errc::ReadDisturbRisk);
  CHECK(error_code([&] { cb.vmm(std::vector<double>{0.1}); }) == Errc::DimensionMismatch);
  CHECK(error_code([] { Crossbar(2, 2, MemristorParams{}, 0.0); }) == Errc::InvalidConfig);
}

TEST_CASE("reads leave devices bit-identical") {
  const Crossbar cb = random_crossbar(6, 5, 1);
  Crossbar copy = cb;
  for (int k = 0; k < 20; ++k) copy.vmm(std::vector<double>{0.9, -0.9, 0.5, 0.99, 0.0});
  CHECK(copy == cb);
}

TEST_CASE("vmm is linear") {
  const Crossbar cb = random_crossbar(4, 6, 2);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> v(-0.2, 0.2);
  for (int k = 0; k < 50; ++k) {
    std::vector<double> i1(6), i2(6), mix(6);
    const double a = v(rng) * 2;
    const double b = v(rng) * 2;
    for (std::size_t j = 0; j < 6; ++j) {
      i1[j] = v(rng);
      i2[j] = v(rng);
      mix[j] = a * i1[j] + b * i2[j];
    }
    const auto o1 = cb.vmm(i1);
    const auto o2 = cb.vmm(i2);
    const auto om = cb.vmm(mix);
    for (std::size_t r = 0; r < 4; ++r) {
      const double want = a * o1[r] + b * o2[r];
      const double scale = std::abs(a * o1[r]) + std::abs(b * o2[r]);
      CHECK(std::abs(om[r] - want) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("row programming") {
  Crossbar cb(3, 4, MemristorParams{}, 16e3);
  const Crossbar fresh = cb;
  cb.program_row(0, std::vector<double>{0, 0, 0, 0}, 0.05);
  CHECK(cb == fresh);
  CHECK_FALSE(cb.row_in_use(0));

  cb.program_row(1, std::vector<double>{1.0, 0.5, 0.0, 0.25}, 0.05);
  CHECK(cb.conductance(1, 0) > cb.conductance(1, 1));
  CHECK(cb.conductance(1, 1) > cb.conductance(1, 3));
  CHECK(cb.device(1, 2).x == 0.0);
  CHECK(cb.row_in_use(1));
  for (std::size_t j = 0; j < 4; ++j) CHECK(cb.device(0, j) == fresh.device(0, j));
  CHECK(error_code([&] { cb.program_row(1, std::vector<double>{1, 1, 1, 1}, 0.05); }) == Errc::RowInUse);
  CHECK(error_code([&] { cb.program_row(2, std::vector<double>{1, 1}, 0.05); }) == Errc::DimensionMismatch);
  CHECK(error_code([&] { cb.program_row(2, std::vector<double>{1, 1.5, 0, 0}, 0.05); }) == Errc::OutOfRange);
}

TEST_CASE("row programming skips faulted cells") {
  Crossbar cb(10, 10, MemristorParams{}, 16e3);
  cb.distort(0.2, 5);
  auto has_fault = [&](std::size_t i) {
    for (std::size_t j = 0; j < 10; ++j) {
      if (cb.faulted(i, j)) return true;
    }
    return false;
  };
  std::size_t row = 0;
  while (row < 10 && !has_fault(row)) ++row;
  REQUIRE(row < 10);
  CHECK_FALSE(cb.row_in_use(row));
  const Crossbar before = cb;
  const auto report = cb.program_row(row, std::vector<double>(10, 1.0), 0.05);
  CHECK(report.row == row);
  CHECK_FALSE(report.skipped_faulted.empty());
  for (std::size_t j = 0; j < 10; ++j) {
    if (cb.faulted(row, j)) {
      CHECK(cb.device(row, j) == before.device(row, j));
      CHECK(std::find(report.skipped_faulted.begin(), report.skipped_faulted.end(), j) !=
            report.skipped_faulted.end());
    } else {
      CHECK(cb.device(row, j).x > 0.0);
    }
  }
}

TEST_CASE("write-verify trims to a target conductance") {
  Crossbar cb(1, 3, MemristorParams{}, 16e3);
  const MemristorParams& p = cb.params();
  const double target = p.g_off() + 0.4 * (p.g_on() - p.g_off());
  CHECK(cb.program_conductance(0, 1, target, {.rel_tol = 1e-12}));
  CHECK(std::abs(cb.conductance(0, 1) - target) <= 1e-12 * target);
  CHECK(cb.device(0, 0).x == 0.0);
  CHECK(error_code([&] { cb.program_conductance(0, 1, 0.5 * target, {}); }) == Errc::InvalidArgument);
  CHECK(error_code([&] { cb.program_conductance(0, 2, 2.0 * p.g_on(), {}); }) == Errc::WeightOutOfRange);
  cb.distort(1.0, 3);
  CHECK_FALSE(cb.program_conductance(0, 2, target, {}));
}

TEST_CASE("hebbian pulses need joint firing") {
  Crossbar cb(2, 3, MemristorParams{}, 16e3);
  const Crossbar fresh = cb;
  cb.hebbian_pulse(std::vector<double>{0, 0}, std::vector<double>{1, 0.5, 1}, 0.05, 1.0);
  CHECK(cb == fresh);
  cb.hebbian_pulse(std::vector<double>{1, 0.3}, std::vector<double>{0, 0, 0}, 0.05, 1.0);
  CHECK(cb == fresh);

  cb.hebbian_pulse(std::vector<double>{1, 0}, std::vector<double>{1, 0, 0.5}, 0.05, 1.0);
  CHECK(cb.weight(0, 0) > fresh.weight(0, 0));
  CHECK(cb.weight(0, 2) > fresh.weight(0, 2));
  CHECK(cb.weight(0, 0) > cb.weight(0, 2));
  CHECK(cb.weight(0, 1) == fresh.weight(0, 1));
  CHECK(cb.weight(1, 0) == fresh.weight(1, 0));
}

TEST_CASE("hebbian soft-and") {
  const MemristorParams p;
  auto dw = [&](double u, double v) {
    Crossbar cb(1, 1, p, p.r_off);
    const double w0 = cb.weight(0, 0);
    cb.hebbian_pulse(std::vector<double>{u}, std::vector<double>{v}, 0.05, 1.0);
    return cb.weight(0, 0) - w0;
  };
  CHECK(dw(1.0, 1.0) > dw(1.0, 0.0) + dw(0.0, 1.0));
  CHECK(dw(0.5, 0.5) == 0.0);
  for (int a = 0; a <= 10; ++a) {
    for (int b = 0; b < 10; ++b) CHECK(dw(a / 10.0, (b + 1) / 10.0) >= dw(a / 10.0, b / 10.0));
  }
}

TEST_CASE("hebbian voltage encoding") {
  Crossbar cb(2, 2, MemristorParams{}, 16e3);
  CHECK(error_code([&] {
          cb.hebbian_pulse(std::vector<double>{1.1, 0}, std::vector<double>{0, 0}, 0.05, 1.0);
        }) == Errc::VoltageEncodingOutOfRange);
  CHECK(error_code([&] {
          cb.hebbian_pulse(std::vector<double>{0, 0}, std::vector<double>{-0.1, 0}, 0.05, 1.0);
        }) == Errc::VoltageEncodingOutOfRange);
  CHECK(error_code([&] {
          cb.hebbian_pulse(std::vector<double>{0, 0}, std::vector<double>{0, 0}, 0.05, 1.5);
        }) == Errc::VoltageEncodingOutOfRange);
  CHECK(error_code([&] {
          cb.hebbian_pulse(std::vector<double>{0}, std::vector<double>{0, 0}, 0.05, 1.0);
        }) == Errc::DimensionMismatch);
}

TEST_CASE("distortion") {
  Crossbar a(10, 10, MemristorParams{}, 16e3);
  const Crossbar fresh = a;
  a.distort(0.0, 1);
  CHECK(a == fresh);

  a.distort(0.2, 1);
  CHECK(a.faulted_count() == 20);
  Crossbar b = fresh;
  b.distort(0.2, 1);
  CHECK(a == b);
  Crossbar c = fresh;
  c.distort(0.2, 2);
  CHECK_FALSE(a == c);

  Crossbar all(4, 3, MemristorParams{}, 16e3);
  all.distort(1.0, 1);
  CHECK(all.faulted_count() == 12);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(all.faulted(i, j));
      CHECK(all.device(i, j).x >= 0.0);
      CHECK(all.device(i, j).x <= 1.0);
    }
  }
  CHECK(error_code([&] { all.distort(1.5, 1); }) == Errc::InvalidArgument);
}

TEST_CASE("identical pulse schedules are deterministic") {
  auto run = [] {
    Crossbar cb(3, 3, MemristorParams{}, 16e3);
    cb.program_row(0, std::vector<double>{0.2, 0.9, 0.4}, 0.05);
    cb.program_row(2, std::vector<double>{1.0, 0.0, 0.6}, 0.03);
    cb.hebbian_pulse(std::vector<double>{0.7, 0.1, 1.0}, std::vector<double>{0.9, 0.6, 0.3}, 0.05, 1.0);
    return cb;
  };
  CHECK(run() == run());
}

TEST_CASE("memristance csv") {
  Crossbar cb(2, 2, MemristorParams{}, 16e3);
  cb.set_device(1, 1, {1.0});
  std::ostringstream out;
  cb.write_memristance_csv(out);
  CHECK(out.str() == "16000,16000\n16000,100\n");
}

}
