#include <doctest.h>

#include <cmath>
#include <vector>

#include "nfc/benchmarks.hpp"
#include "nfc/experiments.hpp"
#include "nfc/mapping.hpp"
#include "support.hpp"

using nfc::Errc;
using nfc::Matrix;
using nfc::MembershipVector;
using nfc::MemristorParams;
using nfc::Network;
using nfc::NetworkConfig;
using nfc::Universe;
using test::error_code;

namespace {

constexpr double kRf = 16e3;

NetworkConfig tiny_config() {
  NetworkConfig c;
  c.inputs = {{"x", Universe::build(0, 1, 1), 0.0}};
  c.output = Universe::build(0, 1, 1);
  return c;
}

Matrix rows_of(std::initializer_list<std::vector<double>> rows) {
  Matrix m(0, rows.begin()->size());
  for (const auto& r : rows) m.append_row(r);
  return m;
}

Network trained_g1(std::size_t n) {
  auto cfg = nfc::paper_defaults(nfc::ExperimentKind::Modeling, "g1");
  Network net(nfc::network_config(cfg));
  for (const auto& p : nfc::gen_uniform_samples(n, cfg.seed)) {
    net.train_one(net.fuzzify(std::vector<double>{p.x, p.y}),
                  nfc::eval_benchmark(nfc::BenchmarkId::G1, p.x, p.y));
  }
  return net;
}

}  // namespace

TEST_SUITE("mapping") {

TEST_CASE("zero weights stay at R_off") {
  const NetworkConfig c = tiny_config();
  const Network net = Network::restore(c, {rows_of({{0, 0}, {0, 0}})}, rows_of({{0, 0}, {0, 0}}), {});
  const auto m = nfc::map_network(net, MemristorParams{}, kRf, {.input_scale = 1e-3, .output_scale = 1e-3});
  CHECK(m.input_readback(0, 0) == 0.0);
  CHECK(m.output_readback(1, 1) == 0.0);
  for (const nfc::Crossbar* cb : {&m.input_xbar, &m.output_xbar}) {
    for (std::size_t i = 0; i < cb->rows(); ++i) {
      for (std::size_t j = 0; j < cb->cols(); ++j) {
        CHECK(cb->device(i, j).x == 0.0);
        CHECK(cb->weight(i, j) == kRf / MemristorParams{}.r_off);
      }
    }
  }
}

TEST_CASE("identity pattern reads back within 1%") {
  const NetworkConfig c = tiny_config();
  const Network net = Network::restore(c, {rows_of({{1, 0}, {0, 1}})}, rows_of({{1, 0}, {0, 1}}), {});
  const auto m = nfc::map_network(net, MemristorParams{}, kRf);
  const double g_off = MemristorParams{}.g_off();
  const double gain = kRf * m.input_scale * m.v_read;
  for (std::size_t k = 0; k < 2; ++k) {
    std::vector<double> basis(2, 0.0);
    basis[k] = m.v_read;
    const auto out = m.input_xbar.vmm(basis);
    for (std::size_t r = 0; r < 2; ++r) {
      const double w = (-out[r] - kRf * g_off * m.v_read) / gain;
      CHECK(std::abs(w - (r == k ? 1.0 : 0.0)) <= 0.01);
    }
  }
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(m.output_readback(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("out-of-range weights") {
  const NetworkConfig c = tiny_config();
  const Network net = Network::restore(c, {rows_of({{1, 0}})}, rows_of({{5.0, 0}}), {});
  const MemristorParams p;
  // 5 * scale exceeds G_on - G_off
  CHECK(error_code([&] { nfc::map_network(net, p, kRf, {.output_scale = p.g_on()}); }) ==
        Errc::WeightOutOfRange);
  CHECK(error_code([&] { nfc::map_network(net, p, kRf, {.capacity = 0, .v_read = 1.0}); }) ==
        Errc::InvalidArgument);

  const Network two = Network::restore(c, {rows_of({{1, 0}, {0, 1}})}, rows_of({{1, 0}, {0, 1}}), {});
  CHECK(error_code([&] { nfc::map_network(two, p, kRf, {.capacity = 1}); }) == Errc::CapacityExceeded);
  const auto roomy = nfc::map_network(two, p, kRf, {.capacity = 5});
  CHECK(roomy.input_xbar.rows() == 5);
  CHECK(roomy.output_xbar.cols() == 5);
  CHECK(roomy.minterms == 2);
}

TEST_CASE("training samples agree with the ideal network") {
  const Network net = trained_g1(40);
  const auto m = nfc::map_network(net, MemristorParams{}, kRf);
  for (const auto& p : nfc::gen_uniform_samples(40, 1)) {
    const auto in = net.fuzzify(std::vector<double>{p.x, p.y});
    const auto ideal = net.forward(in);
    const auto hw = nfc::crossbar_forward(m, in);
    double peak = 0.0;
    for (double o : ideal.output) peak = std::max(peak, std::abs(o));
    for (std::size_t i = 0; i < ideal.output.size(); ++i) {
      CHECK(std::abs(hw.output[i] - ideal.output[i]) <= 0.05 * std::abs(ideal.output[i]) + 1e-12 * peak);
    }
  }
}

TEST_CASE("zero inputs give zero outputs") {
  const Network net = trained_g1(20);
  const auto m = nfc::map_network(net, MemristorParams{}, kRf);
  std::vector<MembershipVector> zero;
  for (const auto& g : net.config().inputs) zero.push_back(MembershipVector::zeros(g.universe));
  const auto hw = nfc::crossbar_forward(m, zero);
  for (double h : hw.hidden) CHECK(h == 0.0);
  for (double o : hw.output) CHECK(o == 0.0);
}

TEST_CASE("single min-term hidden ratio") {
  const Network net = trained_g1(1);
  REQUIRE(net.minterm_count() == 1);
  const auto m = nfc::map_network(net, MemristorParams{}, kRf);
  for (const auto& p : nfc::gen_uniform_samples(30, 8, nfc::Split::Test)) {
    const auto in = net.fuzzify(std::vector<double>{p.x, p.y});
    const double ideal = net.forward(in).hidden[0];
    if (ideal == 0.0) continue;
    CHECK(std::abs(nfc::crossbar_forward(m, in).hidden[0] / ideal - 1.0) <= 0.05);
  }
}

TEST_CASE("crossbar forward guards") {
  const Network net = trained_g1(5);
  const auto m = nfc::map_network(net, MemristorParams{}, kRf);
  const std::vector<MembershipVector> wrong{MembershipVector::zeros(Universe::build(0, 1, 0.5))};
  CHECK(error_code([&] { nfc::crossbar_forward(m, wrong); }) == Errc::UniverseMismatch);
}

}
