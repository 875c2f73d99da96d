#include <doctest.h>

#include <cmath>
#include <vector>

#include "nfc/benchmarks.hpp"
#include "nfc/experiments.hpp"
#include "support.hpp"

using nfc::Backend;
using nfc::Errc;
using nfc::ExperimentConfig;
using nfc::ExperimentKind;
using test::error_code;

namespace {

ExperimentConfig modeling(const char* fn, std::size_t n_test = 1000) {
  auto c = nfc::paper_defaults(ExperimentKind::Modeling, fn);
  c.n_test = n_test;
  return c;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("published defaults") {
  const auto g3 = nfc::paper_defaults(ExperimentKind::Modeling, "g3");
  CHECK(g3.n_train == 225);
  CHECK(g3.n_test == 10000);
  CHECK(g3.p == 7);
  CHECK(g3.alpha == 0.0005);
  CHECK(g3.threshold == 0.1);
  CHECK(g3.nx == 100);
  CHECK(g3.nz == 143);

  CHECK(nfc::paper_defaults(ExperimentKind::Modeling, "g5", 700).n_train == 700);
  CHECK(nfc::paper_defaults(ExperimentKind::Noise, "g2").noise_variance == 0.01);
  CHECK(nfc::paper_defaults(ExperimentKind::Fault, "g2").fault_fraction == 0.2);

  const auto set3 = nfc::paper_defaults(ExperimentKind::Classification, "3");
  CHECK(set3.n_train == 1000);
  CHECK(set3.nx == 98);
  CHECK(set3.ny == 98);

  CHECK(error_code([] { nfc::paper_defaults(ExperimentKind::Modeling, "g7"); }).has_value());
  CHECK(error_code([] { nfc::paper_defaults(ExperimentKind::Classification, "5"); }).has_value());
}

TEST_CASE("config validation") {
  auto c = modeling("g1");
  c.n_train = 0;
  CHECK(error_code([&] { c.validate(); }) == Errc::InvalidConfig);
  c = modeling("g1");
  c.fault_fraction = 1.5;
  CHECK(error_code([&] { c.validate(); }) == Errc::InvalidConfig);
  c = modeling("g1");
  c.noise_variance = -1;
  CHECK(error_code([&] { c.validate(); }) == Errc::InvalidConfig);
  c = modeling("g1");
  c.backend = Backend::Crossbar;
  c.hardware.v_max = 1.5;
  CHECK(error_code([&] { c.validate(); }) == Errc::InvalidConfig);
  CHECK_NOTHROW(modeling("g4").validate());
}

TEST_CASE("enum spellings") {
  CHECK(nfc::parse_backend("crossbar") == Backend::Crossbar);
  CHECK(nfc::to_string(Backend::Ideal) == "ideal");
  CHECK(nfc::parse_experiment_kind("noise") == ExperimentKind::Noise);
  CHECK(nfc::to_string(ExperimentKind::Classification) == "classify");
  CHECK(error_code([] { nfc::parse_backend("analog"); }) == Errc::InvalidArgument);
}

TEST_CASE("single training sample") {
  auto c = modeling("g2", 200);
  c.n_train = 1;
  const auto r = nfc::run_modeling(c);
  CHECK(r.n_minterms == 1);
  CHECK(std::isfinite(r.metric));
  CHECK(r.metric >= 0.0);
  CHECK_FALSE(r.paper_value.has_value());
}

TEST_CASE("runs repeat exactly") {
  const auto a = nfc::run_modeling(modeling("g5"));
  const auto b = nfc::run_modeling(modeling("g5"));
  CHECK(a.metric == b.metric);
  CHECK(a.n_minterms == b.n_minterms);
  CHECK(*a.network == *b.network);
}

TEST_CASE("zero noise and zero faults reduce to plain modeling") {
  const auto base = nfc::run_modeling(modeling("g1"));

  auto n = nfc::paper_defaults(ExperimentKind::Noise, "g1");
  n.n_test = 1000;
  n.noise_variance = 0.0;
  const auto noisy = nfc::run_noise(n);
  CHECK(noisy.metric == base.metric);
  CHECK(*noisy.network == *base.network);

  auto f = nfc::paper_defaults(ExperimentKind::Fault, "g1");
  f.n_test = 1000;
  f.fault_fraction = 0.0;
  const auto clean = nfc::run_fault(f);
  CHECK(clean.metric == base.metric);
  CHECK(clean.n_minterms == base.n_minterms);
  CHECK(*clean.network == *base.network);
}

TEST_CASE("fully distorted crossbars") {
  auto f = nfc::paper_defaults(ExperimentKind::Fault, "g2");
  f.n_test = 200;
  f.fault_fraction = 1.0;
  const auto r = nfc::run_fault(f);
  CHECK(r.status == "all-faulted");
}

TEST_CASE("fault runs are reproducible and grow extra min-terms") {
  auto f = nfc::paper_defaults(ExperimentKind::Fault, "g4");
  f.n_test = 1000;
  const auto a = nfc::run_fault(f);
  const auto b = nfc::run_fault(f);
  CHECK(a.metric == b.metric);
  CHECK(*a.network == *b.network);
  CHECK(a.n_minterms >= nfc::run_modeling(modeling("g4")).n_minterms);
}

TEST_CASE("smaller thresholds never give fewer min-terms") {
  for (const char* fn : {"g1", "g3"}) {
    std::size_t prev = 0;
    for (double t : {0.8, 0.4, 0.2, 0.1, 0.05}) {
      auto c = modeling(fn, 100);
      c.threshold = t;
      const auto r = nfc::run_modeling(c);
      CHECK(r.n_minterms >= prev);
      prev = r.n_minterms;
    }
  }
}

TEST_CASE("stored points reproduce their targets when stored") {
  const auto c = modeling("g1");
  nfc::Network net(nfc::network_config(c));
  const double res = net.config().output.resolution();
  for (const auto& p : nfc::gen_uniform_samples(c.n_train, c.seed)) {
    const double t = nfc::eval_benchmark(nfc::BenchmarkId::G1, p.x, p.y);
    const auto in = net.fuzzify(std::vector<double>{p.x, p.y});
    const auto out = net.train_one(in, t);
    const double err = std::abs(net.infer_crisp(in) - t);
    if (out.kind == nfc::TrainOutcome::Kind::Skipped) {
      CHECK(err < c.threshold);
    } else {
      CHECK(err <= c.threshold + res);
    }
  }
}

TEST_CASE("one point per class") {
  auto c = nfc::paper_defaults(ExperimentKind::Classification, "1");
  nfc::Network net(nfc::network_config(c));
  const std::vector<double> a{0.2, 0.3};
  const std::vector<double> b{0.8, 0.7};
  net.train_one(net.fuzzify(a), 0.0);
  net.train_one(net.fuzzify(b), 1.0);
  CHECK(net.minterm_count() == 2);
  CHECK(net.classify(net.fuzzify(a)) == 0);
  CHECK(net.classify(net.fuzzify(b)) == 1);
}

TEST_CASE("classification report") {
  auto c = nfc::paper_defaults(ExperimentKind::Classification, "2");
  c.n_test = 400;
  const auto r = nfc::run_classification(c);
  CHECK(r.metric_is_rate);
  CHECK(r.metric >= 0.0);
  CHECK(r.metric <= 100.0);
  CHECK(r.class_total[0] + r.class_total[1] == 400);
  CHECK(r.metric == doctest::Approx(100.0 * static_cast<double>(r.class_correct[0] + r.class_correct[1]) / 400.0));
  CHECK(r.paper_value == 99.36);
  CHECK(r.paper_minterms == 45u);
}

TEST_CASE("surface grid") {
  auto c = modeling("g2", 100);
  c.surface_grid = 4;
  const auto r = nfc::run_modeling(c);
  REQUIRE(r.surface.size() == 16);
  CHECK(r.surface.front().x == 0.0);
  CHECK(r.surface.back().x == 1.0);
  CHECK(r.surface.back().y == 1.0);
  CHECK(r.surface[5].actual == nfc::eval_benchmark(nfc::BenchmarkId::G2, r.surface[5].x, r.surface[5].y));
}

TEST_CASE("crossbar backend trains and predicts") {
  auto c = modeling("g1", 500);
  c.backend = Backend::Crossbar;
  c.n_train = 80;
  const auto r = nfc::run_modeling(c);
  CHECK(r.n_minterms > 0);
  CHECK(r.n_minterms <= 80);
  CHECK(r.metric < 1.0);
  CHECK(r.network == nullptr);

  auto k = nfc::paper_defaults(ExperimentKind::Classification, "1");
  k.backend = Backend::Crossbar;
  k.n_train = 100;
  k.n_test = 300;
  CHECK(nfc::run_classification(k).metric > 90.0);

  auto f = nfc::paper_defaults(ExperimentKind::Fault, "g1");
  f.backend = Backend::Crossbar;
  f.n_train = 60;
  f.n_test = 300;
  const auto fr = nfc::run_fault(f);
  CHECK(std::isfinite(fr.metric));
}

TEST_CASE("crossbar comparison from a config") {
  auto c = modeling("g1", 100);
  c.n_train = 50;
  const auto cmp = nfc::compare_crossbar(c, 16e3, 20);
  CHECK(cmp.probes == 20);
  CHECK(cmp.outputs_compared == 20 * c.nz);
  CHECK(cmp.outputs_outside_tolerance == 0);
  CHECK(cmp.max_output_deviation < 0.05);
}

}
