#include "nfc/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "nfc/benchmarks.hpp"
#include "nfc/error.hpp"
#include "nfc/reference.hpp"
#include "rng.hpp"

namespace nfc {

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Modeling: return "model";
    case ExperimentKind::Classification: return "classify";
    case ExperimentKind::Noise: return "noise";
    case ExperimentKind::Fault: return "fault";
  }
  return "?";
}

std::string to_string(Backend backend) {
  return backend == Backend::Ideal ? "ideal" : "crossbar";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (auto k : {ExperimentKind::Modeling, ExperimentKind::Classification, ExperimentKind::Noise,
                 ExperimentKind::Fault}) {
    if (text == to_string(k)) return k;
  }
  throw Error(Errc::InvalidArgument, fmt::format("unknown experiment kind '{}'", text));
}

Backend parse_backend(std::string_view text) {
  if (text == "ideal") return Backend::Ideal;
  if (text == "crossbar") return Backend::Crossbar;
  throw Error(Errc::InvalidArgument, fmt::format("unknown backend '{}' (ideal|crossbar)", text));
}

namespace {

int dataset_id(const ExperimentConfig& c) {
  if (c.target.size() == 1 && c.target[0] >= '1' && c.target[0] <= '4') return c.target[0] - '0';
  throw Error(Errc::UnknownDatasetId, fmt::format("dataset '{}' (expected 1..4)", c.target));
}

}  // namespace

void ExperimentConfig::validate() const {
  auto fail = [](std::string msg) { throw Error(Errc::InvalidConfig, std::move(msg)); };
  try {
    if (kind == ExperimentKind::Classification) {
      dataset_id(*this);
    } else {
      parse_benchmark(target);
    }
  } catch (const Error& e) {
    fail(e.what());
  }
  if (n_train < 1) fail("n_train must be >= 1");
  if (n_test < 1) fail("n_test must be >= 1");
  if (kind != ExperimentKind::Classification && n_test < 2) fail("FVU needs n_test >= 2");
  if (nx < 2 || ny < 2) fail("input universes need at least 2 points");
  if (kind != ExperimentKind::Classification && nz < 2) fail("output universe needs >= 2 points");
  if (p < 1) fail("p must be >= 1");
  if (!(alpha > 0.0)) fail("alpha must be > 0");
  if (!(threshold > 0.0)) fail("threshold must be > 0");
  if (!(input_support >= 0.0) || !(output_support >= 0.0)) fail("supports must be >= 0");
  if (!(noise_variance >= 0.0)) fail("noise_variance must be >= 0");
  if (!(fault_fraction >= 0.0 && fault_fraction <= 1.0)) fail("fault_fraction outside [0,1]");
  memristor.validate();
  if (backend == Backend::Crossbar) {
    const double vt = memristor.v_threshold;
    if (!(hardware.r_f > 0.0)) fail("r_f must be > 0");
    if (!(hardware.v_read > 0.0 && hardware.v_read < vt)) fail("v_read must lie in (0, v_threshold)");
    if (!(hardware.v_max > 0.0 && hardware.v_max <= vt)) fail("v_max must lie in (0, v_threshold]");
    if (!(hardware.program_duration > 0.0) || !(hardware.hebbian_duration > 0.0)) {
      fail("pulse durations must be > 0");
    }
  }
}

ExperimentConfig paper_defaults(ExperimentKind kind, std::string_view target, std::size_t n_train) {
  ExperimentConfig c;
  c.kind = kind;
  c.target = std::string(target);
  if (kind == ExperimentKind::Classification) {
    c.validate();  // rejects unknown dataset ids early
    const auto& row = reference::kClassification[static_cast<std::size_t>(dataset_id(c)) - 1];
    c.n_train = row.n_train;
    c.n_test = 2000;
    c.nx = row.nx;
    c.ny = row.ny;
    c.nz = 2;
    c.threshold = 0.35;
    c.output_support = 0.0;
  } else {
    const BenchmarkId fn = parse_benchmark(target);
    const auto& row = reference::modeling(fn);
    c.target = to_string(fn);
    c.nx = row.nx;
    c.ny = row.ny;
    c.nz = row.nz;
    c.threshold = row.threshold;
    if (kind == ExperimentKind::Noise) c.noise_variance = reference::kNoiseVariance;
    if (kind == ExperimentKind::Fault) c.fault_fraction = reference::kFaultFraction;
  }
  if (n_train > 0) c.n_train = n_train;
  return c;
}

NetworkConfig network_config(const ExperimentConfig& c) {
  NetworkConfig n;
  const Universe ux = Universe::with_count(0.0, 1.0, c.nx);
  const Universe uy = Universe::with_count(0.0, 1.0, c.ny);
  n.inputs = {{"x", ux, c.input_support * ux.resolution()},
              {"y", uy, c.input_support * uy.resolution()}};
  if (c.kind == ExperimentKind::Classification) {
    n.output = Universe::with_count(0.0, 1.0, 2);
    n.output_half_support = 0.0;
  } else {
    const ValueRange r = benchmark_range(parse_benchmark(c.target));
    n.output = Universe::with_count(r.lo, r.hi, c.nz);
    n.output_half_support = c.output_support * n.output.resolution();
  }
  n.p = c.p;
  n.alpha = c.alpha;
  n.novelty_threshold = c.threshold;
  return n;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <typename Model>
void train_crisp(Model& model, std::span<const Point> points, std::span<const double> targets) {
  for (std::size_t k = 0; k < points.size(); ++k) {
    const std::array<double, 2> crisp{points[k].x, points[k].y};
    try {
      model.train_one(model.fuzzify(crisp), Target{targets[k]});
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("sample {}: {}", k, e.what()));
    }
  }
}

/// Crisp prediction, or nullopt where no min-term responds.
template <typename Model>
std::optional<double> predict(const Model& model, double x, double y) {
  if (model.minterm_count() == 0) return std::nullopt;
  const std::array<double, 2> crisp{x, y};
  try {
    return model.infer_crisp(model.fuzzify(crisp));
  } catch (const Error& e) {
    if (e.code() == Errc::AllZeroMembership) return std::nullopt;
    throw;
  }
}

template <typename Model>
void evaluate_fvu(const Model& model, const ExperimentConfig& cfg, BenchmarkId fn,
                  ExperimentReport& report) {
  const double fallback = model.config().output.midpoint();
  const auto test = gen_uniform_samples(cfg.n_test, cfg.seed, Split::Test);
  std::vector<double> predicted(test.size());
  std::vector<double> actual(test.size());
  for (std::size_t k = 0; k < test.size(); ++k) {
    actual[k] = eval_benchmark(fn, test[k].x, test[k].y);
    const auto p = predict(model, test[k].x, test[k].y);
    if (!p) ++report.untrained_points;
    predicted[k] = p.value_or(fallback);
  }
  report.metric = fvu(predicted, actual);

  const std::size_t g = cfg.surface_grid;
  if (g >= 2) {
    report.surface.reserve(g * g);
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t j = 0; j < g; ++j) {
        const double x = static_cast<double>(i) / static_cast<double>(g - 1);
        const double y = static_cast<double>(j) / static_cast<double>(g - 1);
        report.surface.push_back(
            {x, y, predict(model, x, y).value_or(fallback), eval_benchmark(fn, x, y)});
      }
    }
  }
}

std::size_t capacity_of(const ExperimentConfig& cfg) {
  return cfg.hardware.capacity == 0 ? cfg.n_train : cfg.hardware.capacity;
}

/// Shared body of modeling, noise and fault runs.
ExperimentReport run_function_experiment(const ExperimentConfig& cfg, bool noisy, bool faulty) {
  cfg.validate();
  const auto t0 = Clock::now();
  const BenchmarkId fn = parse_benchmark(cfg.target);
  const NetworkConfig ncfg = network_config(cfg);

  const auto train = gen_uniform_samples(cfg.n_train, cfg.seed, Split::Train);
  std::vector<Point> points = train;
  std::vector<double> targets(train.size());
  for (std::size_t k = 0; k < train.size(); ++k) targets[k] = eval_benchmark(fn, train[k].x, train[k].y);
  if (noisy && cfg.noise_variance > 0.0) {
    Rng rng = make_stream(cfg.seed, StreamTag::Noise);
    const double sigma = std::sqrt(cfg.noise_variance);
    for (std::size_t k = 0; k < points.size(); ++k) {
      points[k].x = std::clamp(points[k].x + sigma * normal(rng), 0.0, 1.0);
      points[k].y = std::clamp(points[k].y + sigma * normal(rng), 0.0, 1.0);
      targets[k] = targets[k] + sigma * normal(rng);
    }
  }
  // Clean and noisy targets alike are kept inside the output universe.
  for (double& t : targets) t = std::clamp(t, ncfg.output.lo(), ncfg.output.hi());

  ExperimentReport report;
  report.config = cfg;
  const double fraction = faulty ? cfg.fault_fraction : 0.0;
  if (cfg.backend == Backend::Ideal) {
    auto net = fraction > 0.0
                   ? std::make_shared<Network>(
                         ncfg, FaultOverlay::random(ncfg, capacity_of(cfg), fraction, cfg.seed))
                   : std::make_shared<Network>(ncfg);
    if (net->faults() && net->faults()->all_faulted()) report.status = "all-faulted";
    train_crisp(*net, points, targets);
    report.n_minterms = net->minterm_count();
    evaluate_fvu(*net, cfg, fn, report);
    report.network = std::move(net);
  } else {
    HardwareOptions hw = cfg.hardware;
    hw.capacity = capacity_of(cfg);
    CrossbarNetwork net(ncfg, cfg.memristor, hw);
    if (fraction > 0.0) net.distort(fraction, cfg.seed);
    if (fraction >= 1.0) report.status = "all-faulted";
    train_crisp(net, points, targets);
    report.n_minterms = net.minterm_count();
    evaluate_fvu(net, cfg, fn, report);
  }

  const std::size_t idx = static_cast<std::size_t>(fn) - 1;
  if (faulty) {
    if (cfg.fault_fraction == reference::kFaultFraction && cfg.n_train == 225) {
      report.paper_value = reference::kFaultFvu[idx];
      report.paper_minterms = reference::kFaultMinterms[idx];
    }
  } else if (noisy) {
    if (cfg.noise_variance == reference::kNoiseVariance && cfg.n_train == 225) {
      report.paper_value = reference::kNoiseFvu[idx];
    }
  } else if (cfg.n_train == 225) {
    report.paper_value = reference::modeling(fn).fvu;
    report.paper_minterms = reference::modeling(fn).minterms;
  } else if (const auto row = reference::sample_size(fn, cfg.n_train)) {
    report.paper_value = row->fvu;
    report.paper_minterms = row->minterms;
  }
  report.runtime_ms = elapsed_ms(t0);
  return report;
}

template <typename Model>
void evaluate_classes(const Model& model, const LabeledSet& test, ExperimentReport& report) {
  std::size_t correct = 0;
  for (std::size_t k = 0; k < test.points.size(); ++k) {
    const int label = test.labels[k];
    ++report.class_total[static_cast<std::size_t>(label)];
    if (model.minterm_count() == 0) {
      ++report.untrained_points;
      continue;
    }
    const std::array<double, 2> crisp{test.points[k].x, test.points[k].y};
    try {
      if (static_cast<int>(model.classify(model.fuzzify(crisp))) == label) {
        ++correct;
        ++report.class_correct[static_cast<std::size_t>(label)];
      }
    } catch (const Error& e) {
      if (e.code() != Errc::Unclassifiable) throw;
      ++report.untrained_points;
    }
  }
  report.metric = 100.0 * static_cast<double>(correct) / static_cast<double>(test.points.size());
}

}  // namespace

ExperimentReport run_modeling(const ExperimentConfig& config) {
  return run_function_experiment(config, false, false);
}

ExperimentReport run_noise(const ExperimentConfig& config) {
  return run_function_experiment(config, true, false);
}

ExperimentReport run_fault(const ExperimentConfig& config) {
  return run_function_experiment(config, false, true);
}

ExperimentReport run_classification(const ExperimentConfig& cfg) {
  if (cfg.kind != ExperimentKind::Classification) {
    throw Error(Errc::InvalidConfig, "classification run needs a classification config");
  }
  cfg.validate();
  const auto t0 = Clock::now();
  const int id = dataset_id(cfg);
  const NetworkConfig ncfg = network_config(cfg);
  const LabeledSet train = gen_classification_dataset(id, cfg.n_train, cfg.seed, Split::Train);
  const LabeledSet test = gen_classification_dataset(id, cfg.n_test, cfg.seed, Split::Test);
  std::vector<double> targets(train.labels.begin(), train.labels.end());

  ExperimentReport report;
  report.config = cfg;
  report.metric_is_rate = true;
  if (cfg.backend == Backend::Ideal) {
    auto net = std::make_shared<Network>(ncfg);
    train_crisp(*net, train.points, targets);
    report.n_minterms = net->minterm_count();
    evaluate_classes(*net, test, report);
    report.network = std::move(net);
  } else {
    HardwareOptions hw = cfg.hardware;
    hw.capacity = capacity_of(cfg);
    CrossbarNetwork net(ncfg, cfg.memristor, hw);
    train_crisp(net, train.points, targets);
    report.n_minterms = net.minterm_count();
    evaluate_classes(net, test, report);
  }
  const auto& row = reference::kClassification[static_cast<std::size_t>(id) - 1];
  if (cfg.n_train == row.n_train) {
    report.paper_value = row.rate;
    report.paper_minterms = row.minterms;
  }
  report.runtime_ms = elapsed_ms(t0);
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::Modeling: return run_modeling(config);
    case ExperimentKind::Classification: return run_classification(config);
    case ExperimentKind::Noise: return run_noise(config);
    case ExperimentKind::Fault: return run_fault(config);
  }
  throw Error(Errc::InvalidConfig, "unknown experiment kind");
}

CrossbarComparison compare_crossbar(const Network& net, const MappedNetwork& mapped,
                                    std::span<const Point> probes, double tolerance) {
  CrossbarComparison cmp;
  cmp.minterms = net.minterm_count();
  cmp.probes = probes.size();
  cmp.input_scale = mapped.input_scale;
  cmp.output_scale = mapped.output_scale;
  double dev_sum = 0.0;
  std::size_t dev_count = 0;
  for (const auto& pt : probes) {
    const std::array<double, 2> crisp{pt.x, pt.y};
    const auto inputs = net.fuzzify(crisp);
    const ForwardResult ideal = net.forward(inputs);
    const ForwardResult hw = crossbar_forward(mapped, inputs);
    for (std::size_t j = 0; j < ideal.hidden.size(); ++j) {
      if (ideal.hidden[j] != 0.0) {
        cmp.max_hidden_deviation = std::max(
            cmp.max_hidden_deviation, std::abs(hw.hidden[j] - ideal.hidden[j]) / ideal.hidden[j]);
      }
    }
    double max_ideal = 0.0;
    for (double v : ideal.output) max_ideal = std::max(max_ideal, std::abs(v));
    for (std::size_t i = 0; i < ideal.output.size(); ++i) {
      const double diff = std::abs(hw.output[i] - ideal.output[i]);
      ++cmp.outputs_compared;
      if (diff > tolerance * std::abs(ideal.output[i]) + 1e-12 * max_ideal) {
        ++cmp.outputs_outside_tolerance;
      }
      if (std::abs(ideal.output[i]) <= 1e-12 * max_ideal) {
        ++cmp.outputs_at_floor;
      } else {
        const double rel = diff / std::abs(ideal.output[i]);
        cmp.max_output_deviation = std::max(cmp.max_output_deviation, rel);
        dev_sum += rel;
        ++dev_count;
      }
    }
  }
  cmp.mean_output_deviation = dev_count ? dev_sum / static_cast<double>(dev_count) : 0.0;
  return cmp;
}

CrossbarComparison compare_crossbar(const ExperimentConfig& config, double r_f,
                                    std::size_t probes, const MapOptions& options,
                                    double tolerance) {
  ExperimentConfig cfg = config;
  cfg.kind = ExperimentKind::Modeling;
  cfg.backend = Backend::Ideal;
  cfg.fault_fraction = 0.0;
  cfg.noise_variance = 0.0;
  cfg.surface_grid = 0;
  if (probes == 0) throw Error(Errc::InvalidArgument, "need at least one probe input");
  const ExperimentReport trained = run_modeling(cfg);
  const MappedNetwork mapped = map_network(*trained.network, cfg.memristor, r_f, options);
  const auto pts = gen_uniform_samples(probes, cfg.seed, Split::Test);
  return compare_crossbar(*trained.network, mapped, pts, tolerance);
}

}  // namespace nfc
