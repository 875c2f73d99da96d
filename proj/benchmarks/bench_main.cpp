#include <benchmark/benchmark.h>

#include <vector>

#include "nfc/benchmarks.hpp"
#include "nfc/crossbar.hpp"
#include "nfc/experiments.hpp"
#include "nfc/mapping.hpp"
#include "nfc/memristor.hpp"
#include "nfc/network.hpp"

namespace {

nfc::Network trained(std::size_t n) {
  const auto cfg = nfc::paper_defaults(nfc::ExperimentKind::Modeling, "g1");
  nfc::Network net(nfc::network_config(cfg));
  for (const auto& p : nfc::gen_uniform_samples(n, cfg.seed)) {
    net.train_one(net.fuzzify(std::vector<double>{p.x, p.y}),
                  nfc::eval_benchmark(nfc::BenchmarkId::G1, p.x, p.y));
  }
  return net;
}

void BM_Forward(benchmark::State& state) {
  const nfc::Network net = trained(static_cast<std::size_t>(state.range(0)));
  const auto in = net.fuzzify(std::vector<double>{0.37, 0.61});
  for (auto _ : state) benchmark::DoNotOptimize(net.forward(in));
  state.counters["minterms"] = static_cast<double>(net.minterm_count());
}
BENCHMARK(BM_Forward)->Arg(50)->Arg(225)->Arg(700);

void BM_TrainEpoch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(trained(n).minterm_count());
}
BENCHMARK(BM_TrainEpoch)->Arg(225)->Unit(benchmark::kMillisecond);

void BM_Vmm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  nfc::Crossbar cb(n, n, nfc::MemristorParams{}, 16e3);
  std::vector<double> v(n, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(cb.vmm(v));
}
BENCHMARK(BM_Vmm)->Arg(16)->Arg(128)->Arg(256);

void BM_CrossbarForward(benchmark::State& state) {
  const nfc::Network net = trained(225);
  const auto mapped = nfc::map_network(net, nfc::MemristorParams{}, 16e3);
  const auto in = net.fuzzify(std::vector<double>{0.37, 0.61});
  for (auto _ : state) benchmark::DoNotOptimize(nfc::crossbar_forward(mapped, in));
}
BENCHMARK(BM_CrossbarForward)->Unit(benchmark::kMicrosecond);

void BM_StepDevice(benchmark::State& state) {
  const nfc::MemristorParams p;
  nfc::MemristorState s{0.0};
  for (auto _ : state) {
    s = nfc::step_device(s, p, 1.5, p.dt);
    if (s.x >= 1.0) s.x = 0.0;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_StepDevice);

void BM_Pulse(benchmark::State& state) {
  const nfc::MemristorParams p;
  for (auto _ : state) benchmark::DoNotOptimize(nfc::apply_pulse(nfc::MemristorState{0.0}, p, 2.0, 0.05));
}
BENCHMARK(BM_Pulse)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
