// Randomized invariants of the ideal network. Kept under a few seconds.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "nfc/benchmarks.hpp"
#include "nfc/experiments.hpp"
#include "nfc/network.hpp"
#include "oracle.hpp"

using nfc::Matrix;
using nfc::MembershipVector;
using nfc::Network;
using nfc::NetworkConfig;
using nfc::TrainOutcome;
using nfc::Universe;

namespace {

NetworkConfig coarse_config(std::size_t n_in, std::size_t n_out, double threshold) {
  NetworkConfig c;
  c.inputs = {{"x", Universe::with_count(0, 1, n_in), 0.3}, {"y", Universe::with_count(0, 1, n_in), 0.3}};
  c.output = Universe::with_count(0, 1, n_out);
  c.output_half_support = 0.2;
  c.novelty_threshold = threshold;
  return c;
}

std::vector<MembershipVector> random_inputs(const NetworkConfig& c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<MembershipVector> in;
  for (const auto& g : c.inputs) {
    std::vector<double> v(g.universe.count());
    for (auto& e : v) e = u(rng) < 0.3 ? 0.0 : u(rng);
    if (std::all_of(v.begin(), v.end(), [](double e) { return e == 0.0; })) v[0] = 1.0;
    in.emplace_back(g.universe, std::move(v));
  }
  return in;
}

bool all_non_negative(const Network& net) {
  for (std::size_t g = 0; g < net.config().inputs.size(); ++g) {
    for (double w : net.input_weights(g).data()) {
      if (!(w >= 0.0 && w <= 1.0)) return false;
    }
  }
  for (double w : net.output_weights_by_hidden().data()) {
    if (!(w >= 0.0)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("just-learned samples are skipped at narrow input support") {
  for (const char* fn : {"g1", "g2", "g3", "g4", "g5"}) {
    auto cfg = nfc::paper_defaults(nfc::ExperimentKind::Modeling, fn);
    cfg.input_support = 3.0;
    Network net(nfc::network_config(cfg));
    const auto id = nfc::parse_benchmark(fn);
    std::size_t added = 0;
    for (const auto& p : nfc::gen_uniform_samples(120, 3)) {
      const auto in = net.fuzzify(std::vector<double>{p.x, p.y});
      const double t = nfc::eval_benchmark(id, p.x, p.y);
      if (net.train_one(in, t).kind != TrainOutcome::Kind::MinTermAdded) continue;
      ++added;
      const Network before = net;
      CHECK(net.train_one(in, t).kind == TrainOutcome::Kind::Skipped);
      CHECK(net == before);
    }
    CHECK(added > 1);
  }
}

TEST_CASE("retraining follows the novelty rule at the default support") {
  for (const char* fn : {"g1", "g2", "g3", "g4", "g5"}) {
    const auto cfg = nfc::paper_defaults(nfc::ExperimentKind::Modeling, fn);
    Network net(nfc::network_config(cfg));
    const auto id = nfc::parse_benchmark(fn);
    const auto pts = nfc::gen_uniform_samples(120, 3);
    for (const auto& p : pts) {
      const auto in = net.fuzzify(std::vector<double>{p.x, p.y});
      const double t = nfc::eval_benchmark(id, p.x, p.y);
      if (net.train_one(in, t).kind != TrainOutcome::Kind::MinTermAdded) continue;
      // a stored sample is skipped exactly when it is reproduced within the threshold
      const double err = std::abs(net.infer_crisp(in) - t);
      const Network before = net;
      const auto again = net.train_one(in, t);
      CHECK(again.pre_update_error == doctest::Approx(err).epsilon(1e-12));
      if (err < cfg.threshold) {
        CHECK(again.kind == TrainOutcome::Kind::Skipped);
        CHECK(net == before);
      } else {
        CHECK(again.kind == TrainOutcome::Kind::MinTermAdded);
        CHECK(net.minterm_count() == before.minterm_count() + 1);
      }
    }
    std::size_t skipped = 0;
    for (const auto& p : pts) {
      const auto in = net.fuzzify(std::vector<double>{p.x, p.y});
      const Network before = net;
      const auto out = net.train_one(in, nfc::eval_benchmark(id, p.x, p.y));
      if (out.kind == TrainOutcome::Kind::Skipped) {
        ++skipped;
        CHECK(out.pre_update_error < cfg.threshold);
        CHECK(net == before);
      }
    }
    CHECK(skipped > 0);
  }
}

TEST_CASE("weights stay non-negative and growth is bounded") {
  const NetworkConfig c = coarse_config(6, 6, 0.25);
  Network net(c);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t step = 1; step <= 10000; ++step) {
    const auto in = random_inputs(c, rng);
    if (step % 2 == 0) {
      net.train_one(in, u(rng));
    } else {
      std::vector<double> t(c.output.count());
      for (auto& e : t) e = u(rng);
      t[step % t.size()] = 1.0;
      net.train_one(in, MembershipVector(c.output, t));
    }
    REQUIRE(net.minterm_count() <= step);
    if (step % 1000 == 0) REQUIRE(all_non_negative(net));
  }
  CHECK(all_non_negative(net));
  CHECK(net.minterm_count() > 0);
}

TEST_CASE("centroid inference ignores output scale") {
  const NetworkConfig c = coarse_config(8, 9, 0.1);
  Network net(c);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) net.train_one(random_inputs(c, rng), u(rng));
  for (double factor : {1e-6, 0.5, 3.0, 1e6}) {
    Network scaled = net;
    scaled.scale_output_weights(factor);
    for (int k = 0; k < 50; ++k) {
      const auto in = random_inputs(c, rng);
      const auto raw = net.forward(in).output;
      if (std::all_of(raw.begin(), raw.end(), [](double o) { return o == 0.0; })) continue;
      CHECK(scaled.infer_crisp(in) == doctest::Approx(net.infer_crisp(in)).epsilon(1e-12));
    }
  }
}

TEST_CASE("forward matches the nested-loop oracle") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> pick(1, 4);
  for (int instance = 0; instance < 100; ++instance) {
    const std::size_t groups = static_cast<std::size_t>(pick(rng) % 3 + 1);
    const std::size_t nv = static_cast<std::size_t>(pick(rng));
    const int p = pick(rng) * 2 - 1;

    NetworkConfig c;
    for (std::size_t g = 0; g < groups; ++g) {
      c.inputs.push_back({"g" + std::to_string(g), Universe::with_count(0, 1, static_cast<std::size_t>(pick(rng) + 1)), 0.0});
    }
    c.output = Universe::with_count(0, 1, static_cast<std::size_t>(pick(rng) + 1));
    c.p = p;

    auto random_vec = [&](std::size_t n, bool unit) {
      oracle::Vec v(n);
      for (auto& e : v) e = u(rng) < 0.25 ? 0.0 : (unit ? u(rng) : 5.0 * u(rng));
      return v;
    };

    std::vector<std::vector<oracle::Vec>> rows(nv);
    std::vector<Matrix> w_in;
    for (const auto& g : c.inputs) w_in.emplace_back(0, g.universe.count());
    for (std::size_t j = 0; j < nv; ++j) {
      for (std::size_t g = 0; g < groups; ++g) {
        rows[j].push_back(random_vec(c.inputs[g].universe.count(), true));
        w_in[g].append_row(rows[j][g]);
      }
    }
    const std::size_t nz = c.output.count();
    std::vector<oracle::Vec> w_out(nz, oracle::Vec(nv));
    Matrix by_hidden(0, nz);
    for (std::size_t j = 0; j < nv; ++j) {
      const auto col = random_vec(nz, false);
      for (std::size_t i = 0; i < nz; ++i) w_out[i][j] = col[i];
      by_hidden.append_row(col);
    }
    const Network net = Network::restore(c, w_in, by_hidden, {});

    for (int probe = 0; probe < 5; ++probe) {
      std::vector<oracle::Vec> xs;
      std::vector<MembershipVector> in;
      for (const auto& g : c.inputs) {
        xs.push_back(random_vec(g.universe.count(), true));
        in.emplace_back(g.universe, xs.back());
      }
      const auto want = oracle::reference_forward(rows, w_out, xs, p);
      const auto got = net.forward(in);
      REQUIRE(got.hidden.size() == want.hidden.size());
      REQUIRE(got.output.size() == want.output.size());
      for (std::size_t j = 0; j < nv; ++j) {
        CHECK(std::abs(got.hidden[j] - want.hidden[j]) <= 1e-12 * std::max(1e-300, std::abs(want.hidden[j])));
      }
      for (std::size_t i = 0; i < nz; ++i) {
        CHECK(std::abs(got.output[i] - want.output[i]) <= 1e-12 * std::max(1e-300, std::abs(want.output[i])));
      }
    }
  }
}

TEST_CASE("argmax ties resolve to the lowest index, every time") {
  NetworkConfig c;
  c.inputs = {{"x", Universe::build(0, 1, 0.5), 0.0}};
  c.output = Universe::with_count(0, 1, 4);
  Matrix row(0, 3);
  row.append_row(std::vector<double>{0, 1, 0});
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> level(0, 2);
  const std::vector<MembershipVector> in{MembershipVector(c.inputs[0].universe, {0, 1, 0})};
  for (int k = 0; k < 200; ++k) {
    std::vector<double> w(4);
    for (auto& e : w) e = 0.25 * level(rng);
    if (std::all_of(w.begin(), w.end(), [](double e) { return e == 0.0; })) w[3] = 0.5;
    Matrix by_hidden(0, 4);
    by_hidden.append_row(w);
    const Network net = Network::restore(c, {row}, by_hidden, {});
    const auto first = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
    for (int rep = 0; rep < 3; ++rep) CHECK(net.classify(in) == first);
    CHECK(Network(net).classify(in) == first);
  }
}
