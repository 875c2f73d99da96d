// nfc: train and evaluate the neuro-fuzzy system, run experiment suites and
// compare the crossbar backend against the ideal network.

#include <condition_variable>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "nfc/benchmarks.hpp"
#include "nfc/error.hpp"
#include "nfc/experiments.hpp"
#include "nfc/io.hpp"
#include "nfc/mapping.hpp"
#include "nfc/memristor.hpp"
#include "nfc/report.hpp"
#include "nfc/serialize.hpp"

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"experiment",
     {"function", "dataset", "n_train", "n_test", "seed", "noise_variance", "fault_fraction",
      "backend", "surface_grid"}},
    {"network",
     {"p", "alpha", "threshold", "nx", "ny", "nz", "input_support", "output_support"}},
    {"crossbar",
     {"r_on", "r_off", "thickness", "mobility", "v_threshold", "dt", "r_f", "v_read", "capacity",
      "program_duration", "hebbian_duration", "v_max", "write_base", "write_span", "input_scale",
      "output_scale", "headroom", "probes", "tolerance", "sweep_points", "sweep_v_max",
      "sweep_duration"}},
};

pt::ptree load_config(const std::string& path) {
  pt::ptree tree;
  if (path.empty()) return tree;
  if (!fs::is_regular_file(path)) throw ConfigError(fmt::format("config file '{}' not found", path));
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("config file: {}", e.what()));
  }
  for (const auto& [section, body] : tree) {
    const auto known = kKnownKeys.find(section);
    if (body.empty()) throw ConfigError(fmt::format("config key '{}' outside a section", section));
    if (known == kKnownKeys.end()) throw ConfigError(fmt::format("unknown section [{}]", section));
    for (const auto& [key, value] : body) {
      if (!known->second.contains(key)) {
        throw ConfigError(fmt::format("unknown key '{}' in [{}]", key, section));
      }
    }
  }
  return tree;
}

template <typename T>
T parse_value(const std::string& text, const std::string& key) {
  if constexpr (std::is_same_v<T, std::string>) {
    return text;
  } else {
    std::istringstream in(text);
    T value{};
    in >> value;
    if (in.fail() || !(in >> std::ws).eof()) {
      throw ConfigError(fmt::format("config key '{}': cannot parse '{}'", key, text));
    }
    return value;
  }
}

template <typename T>
std::optional<T> file_value(const pt::ptree& tree, const std::string& key) {
  if (const auto v = tree.get_optional<std::string>(pt::ptree::path_type(key, '.'))) {
    return parse_value<T>(*v, key);
  }
  return std::nullopt;
}

template <typename T>
void set_from_file(const pt::ptree& tree, const std::string& key, T& dst) {
  if (auto v = file_value<T>(tree, key)) dst = *v;
}

template <typename T, typename U>
void set_from_flag(const std::optional<T>& flag, U& dst) {
  if (flag) dst = static_cast<U>(*flag);
}

struct Common {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> backend;
  bool paper_defaults = false;
  bool record_runtime = false;
};

struct Overrides {
  std::optional<std::string> fn;
  std::optional<int> dataset;
  std::optional<std::size_t> n_train;
  std::optional<std::size_t> n_test;
  std::optional<int> p;
  std::optional<double> alpha;
  std::optional<double> threshold;
  std::optional<std::size_t> nx;
  std::optional<std::size_t> ny;
  std::optional<std::size_t> nz;
  std::optional<double> input_support;
  std::optional<double> output_support;
  std::optional<double> noise_variance;
  std::optional<double> fault_fraction;
  std::optional<std::size_t> surface;
  std::string save_state;
};

void add_network_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--n-train", o.n_train, "Training samples");
  cmd->add_option("--n-test", o.n_test, "Test samples");
  cmd->add_option("--p", o.p, "PowerSum exponent of the hidden layer");
  cmd->add_option("--alpha", o.alpha, "Hebbian learning rate");
  cmd->add_option("--threshold", o.threshold, "Novelty threshold");
  cmd->add_option("--nx", o.nx, "Neurons on the x universe");
  cmd->add_option("--ny", o.ny, "Neurons on the y universe");
  cmd->add_option("--input-support", o.input_support,
                  "Input triangle half support, in input resolutions");
  cmd->add_option("--save-state", o.save_state, "Write the trained network state here");
}

void apply_memristor_file(const pt::ptree& file, nfc::ExperimentConfig& c) {
  set_from_file(file, "crossbar.r_on", c.memristor.r_on);
  set_from_file(file, "crossbar.r_off", c.memristor.r_off);
  set_from_file(file, "crossbar.thickness", c.memristor.thickness);
  set_from_file(file, "crossbar.mobility", c.memristor.mobility);
  set_from_file(file, "crossbar.v_threshold", c.memristor.v_threshold);
  set_from_file(file, "crossbar.dt", c.memristor.dt);
  set_from_file(file, "crossbar.r_f", c.hardware.r_f);
  set_from_file(file, "crossbar.v_read", c.hardware.v_read);
  set_from_file(file, "crossbar.capacity", c.hardware.capacity);
  set_from_file(file, "crossbar.program_duration", c.hardware.program_duration);
  set_from_file(file, "crossbar.hebbian_duration", c.hardware.hebbian_duration);
  set_from_file(file, "crossbar.v_max", c.hardware.v_max);
  set_from_file(file, "crossbar.write_base", c.hardware.program_drive.base);
  set_from_file(file, "crossbar.write_span", c.hardware.program_drive.span);
}

/// Defaults are the published settings; then the file, the pinned published
/// values when requested, and finally explicit flags.
nfc::ExperimentConfig build_config(nfc::ExperimentKind kind, const pt::ptree& file,
                                   const Common& common, const Overrides& o) {
  try {
    std::string target;
    if (kind == nfc::ExperimentKind::Classification) {
      target = o.dataset ? std::to_string(*o.dataset)
                         : file_value<std::string>(file, "experiment.dataset").value_or("1");
    } else {
      target = o.fn.value_or(file_value<std::string>(file, "experiment.function").value_or("g1"));
    }
    nfc::ExperimentConfig c = nfc::paper_defaults(kind, target);
    const nfc::ExperimentConfig pinned = c;

    set_from_file(file, "experiment.n_train", c.n_train);
    set_from_file(file, "experiment.n_test", c.n_test);
    set_from_file(file, "experiment.seed", c.seed);
    set_from_file(file, "experiment.noise_variance", c.noise_variance);
    set_from_file(file, "experiment.fault_fraction", c.fault_fraction);
    set_from_file(file, "experiment.surface_grid", c.surface_grid);
    if (auto b = file_value<std::string>(file, "experiment.backend")) c.backend = nfc::parse_backend(*b);
    set_from_file(file, "network.p", c.p);
    set_from_file(file, "network.alpha", c.alpha);
    set_from_file(file, "network.threshold", c.threshold);
    set_from_file(file, "network.nx", c.nx);
    set_from_file(file, "network.ny", c.ny);
    set_from_file(file, "network.nz", c.nz);
    set_from_file(file, "network.input_support", c.input_support);
    set_from_file(file, "network.output_support", c.output_support);
    apply_memristor_file(file, c);

    if (common.paper_defaults) {
      c.n_train = pinned.n_train;
      c.n_test = pinned.n_test;
      c.p = pinned.p;
      c.alpha = pinned.alpha;
      c.threshold = pinned.threshold;
      c.nx = pinned.nx;
      c.ny = pinned.ny;
      c.nz = pinned.nz;
      c.input_support = pinned.input_support;
      c.output_support = pinned.output_support;
      c.noise_variance = pinned.noise_variance;
      c.fault_fraction = pinned.fault_fraction;
    }

    set_from_flag(common.seed, c.seed);
    if (common.backend) c.backend = nfc::parse_backend(*common.backend);
    set_from_flag(o.n_train, c.n_train);
    set_from_flag(o.n_test, c.n_test);
    set_from_flag(o.p, c.p);
    set_from_flag(o.alpha, c.alpha);
    set_from_flag(o.threshold, c.threshold);
    set_from_flag(o.nx, c.nx);
    set_from_flag(o.ny, c.ny);
    set_from_flag(o.nz, c.nz);
    set_from_flag(o.input_support, c.input_support);
    set_from_flag(o.output_support, c.output_support);
    set_from_flag(o.noise_variance, c.noise_variance);
    set_from_flag(o.fault_fraction, c.fault_fraction);
    set_from_flag(o.surface, c.surface_grid);
    c.validate();
    return c;
  } catch (const nfc::Error& e) {
    throw ConfigError(e.what());
  }
}

std::string label_of(const nfc::ExperimentConfig& c) {
  return c.kind == nfc::ExperimentKind::Classification ? "set" + c.target : c.target;
}

std::string report_csv(const nfc::ExperimentReport& r, const Common& common) {
  std::ostringstream out;
  nfc::write_report_header(out);
  nfc::write_report_row(out, r, {.record_runtime = common.record_runtime});
  return out.str();
}

void summarize(const nfc::ExperimentReport& r) {
  const std::string metric = r.metric_is_rate ? fmt::format("rate {:.2f}%", r.metric)
                                              : fmt::format("FVU {:.4f}", r.metric);
  std::string published;
  if (r.paper_value) {
    published = r.paper_minterms ? fmt::format(" (published {}, {} min-terms)", *r.paper_value, *r.paper_minterms)
                                 : fmt::format(" (published {})", *r.paper_value);
  }
  std::cerr << fmt::format("{} {}: {}, {} min-terms{}\n", nfc::to_string(r.config.kind),
                           label_of(r.config), metric, r.n_minterms, published);
}

int cmd_single(nfc::ExperimentKind kind, const Common& common, const Overrides& o) {
  const pt::ptree file = load_config(common.config_path);
  const nfc::ExperimentConfig cfg = build_config(kind, file, common, o);
  if (!o.save_state.empty() && cfg.backend != nfc::Backend::Ideal) {
    throw ConfigError("--save-state needs the ideal backend");
  }
  const nfc::ExperimentReport report = nfc::run_experiment(cfg);
  summarize(report);

  const fs::path out = common.out_dir;
  const std::string stem = fmt::format("{}_{}", nfc::to_string(kind), label_of(cfg));
  const std::string csv = report_csv(report, common);
  nfc::write_file_atomically(out / (stem + ".csv"), csv);
  std::cout << csv;
  if (!report.surface.empty()) {
    std::ostringstream s;
    nfc::write_surface_csv(s, report.surface);
    nfc::write_file_atomically(out / ("surface_" + stem + ".csv"), s.str());
  }
  if (!o.save_state.empty()) nfc::save_state(o.save_state, *report.network);
  return 0;
}

struct SuiteRow {
  nfc::ExperimentConfig config;
};

std::vector<nfc::ExperimentConfig> suite_table(const std::string& name) {
  using nfc::ExperimentKind;
  std::vector<nfc::ExperimentConfig> rows;
  const std::vector<std::string> fns{"g1", "g2", "g3", "g4", "g5"};
  if (name == "table1") {
    for (const auto& f : fns) rows.push_back(nfc::paper_defaults(ExperimentKind::Modeling, f));
  } else if (name == "table3") {
    for (const auto* f : {"g1", "g3", "g5"}) {
      for (std::size_t n : {400, 700}) rows.push_back(nfc::paper_defaults(ExperimentKind::Modeling, f, n));
    }
  } else if (name == "classification") {
    for (const auto* d : {"1", "2", "3", "4"}) {
      rows.push_back(nfc::paper_defaults(ExperimentKind::Classification, d));
    }
  } else if (name == "noise") {
    for (const auto& f : fns) rows.push_back(nfc::paper_defaults(ExperimentKind::Noise, f));
  } else if (name == "fault") {
    for (const auto& f : fns) rows.push_back(nfc::paper_defaults(ExperimentKind::Fault, f));
  }
  return rows;
}

struct RowResult {
  std::optional<nfc::ExperimentReport> report;
  std::string error;
};

/// Runs rows on `jobs` workers and hands results to `sink` in row order.
template <typename Sink>
void run_ordered(const std::vector<nfc::ExperimentConfig>& rows, std::size_t jobs, Sink sink) {
  std::vector<std::optional<RowResult>> done(rows.size());
  std::mutex mu;
  std::condition_variable cv;
  std::size_t next = 0;

  auto worker = [&] {
    for (;;) {
      std::size_t k;
      {
        std::lock_guard lock(mu);
        if (next == rows.size()) return;
        k = next++;
      }
      RowResult r;
      try {
        r.report = nfc::run_experiment(rows[k]);
      } catch (const nfc::Error& e) {
        r.error = "error:" + std::string(nfc::to_string(e.code()));
      } catch (const std::exception& e) {
        r.error = "error:internal";
      }
      {
        std::lock_guard lock(mu);
        done[k] = std::move(r);
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::max<std::size_t>(1, std::min(jobs, rows.size())); ++t) {
    pool.emplace_back(worker);
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    RowResult r;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return done[k].has_value(); });
      r = std::move(*done[k]);
    }
    sink(k, r);
  }
  for (auto& t : pool) t.join();
}

int cmd_suite(const Common& common, const std::vector<std::string>& only, std::size_t jobs) {
  const std::vector<std::string> all{"table1", "table3", "classification", "noise", "fault"};
  const std::vector<std::string>& tables = only.empty() ? all : only;
  fs::create_directories(common.out_dir);
  bool failed = false;
  for (const auto& table : tables) {
    std::vector<nfc::ExperimentConfig> rows = suite_table(table);
    for (auto& c : rows) {
      if (common.seed) c.seed = *common.seed;
      if (common.backend) c.backend = nfc::parse_backend(*common.backend);
    }
    const fs::path path = fs::path(common.out_dir) / (table + ".csv");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw nfc::Error(nfc::Errc::Io, fmt::format("cannot write {}", path.string()));
    nfc::write_report_header(out);
    out.flush();
    run_ordered(rows, jobs, [&](std::size_t k, const RowResult& r) {
      if (r.report) {
        nfc::write_report_row(out, *r.report, {.record_runtime = common.record_runtime});
        summarize(*r.report);
      } else {
        nfc::write_failed_row(out, rows[k], r.error);
        std::cerr << fmt::format("{} row {}: {}\n", table, k + 1, r.error);
        failed = true;
      }
      out.flush();
    });
    std::cout << path.string() << '\n';
  }
  return failed ? kExitRuntime : 0;
}

struct CrossbarFlags {
  std::optional<std::size_t> probes;
  std::optional<double> r_f;
  std::optional<double> tolerance;
  bool sweep_only = false;
  bool dump_crossbars = false;
};

int cmd_crossbar_compare(const Common& common, const Overrides& o, const CrossbarFlags& flags) {
  const pt::ptree file = load_config(common.config_path);
  const nfc::ExperimentConfig cfg = build_config(nfc::ExperimentKind::Modeling, file, common, o);

  double r_f = cfg.memristor.r_off;
  std::size_t probes = 100;
  double tolerance = 0.05;
  std::size_t sweep_points = 201;
  double sweep_v_max = 2.0 * cfg.memristor.v_threshold;
  double sweep_duration = 0.05;
  nfc::MapOptions map;
  try {
    set_from_file(file, "crossbar.r_f", r_f);
    set_from_file(file, "crossbar.probes", probes);
    set_from_file(file, "crossbar.tolerance", tolerance);
    set_from_file(file, "crossbar.sweep_points", sweep_points);
    set_from_file(file, "crossbar.sweep_v_max", sweep_v_max);
    set_from_file(file, "crossbar.sweep_duration", sweep_duration);
    set_from_file(file, "crossbar.input_scale", map.input_scale);
    set_from_file(file, "crossbar.output_scale", map.output_scale);
    set_from_file(file, "crossbar.headroom", map.headroom);
    set_from_file(file, "crossbar.v_read", map.v_read);
  } catch (const nfc::Error& e) {
    throw ConfigError(e.what());
  }
  set_from_flag(flags.r_f, r_f);
  set_from_flag(flags.probes, probes);
  set_from_flag(flags.tolerance, tolerance);
  if (!(r_f > 0.0)) throw ConfigError("r_f must be > 0");
  if (probes == 0) throw ConfigError("probes must be >= 1");
  if (sweep_points < 2) throw ConfigError("sweep_points must be >= 2");

  const fs::path out = common.out_dir;
  const auto sweep = nfc::weight_sweep(cfg.memristor, r_f, nfc::MemristorState{0.0}, 0.0,
                                       sweep_v_max, sweep_points, sweep_duration, cfg.memristor.dt);
  std::ostringstream s;
  nfc::write_sweep_csv(s, sweep);
  nfc::write_file_atomically(out / "weight_sweep.csv", s.str());
  std::cerr << fmt::format("weight sweep: {} points, delta w at {} V = {}\n", sweep.size(),
                           sweep.back().voltage, sweep.back().delta_weight);
  if (flags.sweep_only) {
    std::cout << (out / "weight_sweep.csv").string() << '\n';
    return 0;
  }

  nfc::ExperimentConfig train_cfg = cfg;
  train_cfg.backend = nfc::Backend::Ideal;
  const nfc::ExperimentReport trained = nfc::run_modeling(train_cfg);
  const nfc::MappedNetwork mapped = nfc::map_network(*trained.network, cfg.memristor, r_f, map);
  const auto pts = nfc::gen_uniform_samples(probes, cfg.seed, nfc::Split::Test);
  const nfc::CrossbarComparison cmp = nfc::compare_crossbar(*trained.network, mapped, pts, tolerance);

  std::string csv =
      "function,n_train,seed,n_minterms,probes,outputs_compared,outputs_outside_tolerance,"
      "outputs_at_floor,max_output_deviation,mean_output_deviation,max_hidden_deviation,"
      "input_scale,output_scale,tolerance\n";
  csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", cfg.target, cfg.n_train,
                     cfg.seed, cmp.minterms, cmp.probes, cmp.outputs_compared,
                     cmp.outputs_outside_tolerance, cmp.outputs_at_floor, cmp.max_output_deviation,
                     cmp.mean_output_deviation, cmp.max_hidden_deviation, cmp.input_scale,
                     cmp.output_scale, tolerance);
  nfc::write_file_atomically(out / "crossbar_compare.csv", csv);
  if (flags.dump_crossbars) {
    std::ostringstream a;
    mapped.input_xbar.write_memristance_csv(a);
    nfc::write_file_atomically(out / "input_crossbar_memristance.csv", a.str());
    std::ostringstream b;
    mapped.output_xbar.write_memristance_csv(b);
    nfc::write_file_atomically(out / "output_crossbar_memristance.csv", b.str());
  }
  std::cout << fmt::format("max relative output deviation: {:.3e}\n", cmp.max_output_deviation);
  std::cout << fmt::format("outputs outside tolerance: {} of {}\n", cmp.outputs_outside_tolerance,
                           cmp.outputs_compared);
  return cmp.outputs_outside_tolerance == 0 ? 0 : kExitRuntime;
}

void write_matrix_csv(const fs::path& path, const nfc::Matrix& m) {
  std::ostringstream out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << fmt::format("{}", m(r, c));
    }
    out << '\n';
  }
  nfc::write_file_atomically(path, out.str());
}

int cmd_dump_state(const Common& common, const std::string& state_path, bool matrices) {
  if (!fs::is_regular_file(state_path)) {
    throw ConfigError(fmt::format("state file '{}' not found", state_path));
  }
  const nfc::Network net = nfc::load_state(state_path);
  const nfc::NetworkConfig& c = net.config();
  std::cout << fmt::format("format_version: {}\n", nfc::kStateFormatVersion);
  std::cout << fmt::format("minterms: {}\n", net.minterm_count());
  for (const auto& g : c.inputs) {
    std::cout << fmt::format("input {}: [{}, {}] x {} points, half_support {}\n", g.name,
                             g.universe.lo(), g.universe.hi(), g.universe.count(), g.half_support);
  }
  std::cout << fmt::format("output: [{}, {}] x {} points, half_support {}\n", c.output.lo(),
                           c.output.hi(), c.output.count(), c.output_half_support);
  std::cout << fmt::format("p: {}\nalpha: {}\nthreshold: {}\nhebbian_tnorm: {}\n", c.p, c.alpha,
                           c.novelty_threshold, c.hebbian_tnorm.name());
  if (net.faults()) {
    std::cout << fmt::format("faulted cells: {} of {}\n", net.faults()->faulted_cells(),
                             net.faults()->total_cells());
  }
  if (matrices) {
    const fs::path out = common.out_dir;
    for (std::size_t g = 0; g < c.inputs.size(); ++g) {
      write_matrix_csv(out / fmt::format("state_input_{}.csv", c.inputs[g].name), net.input_weights(g));
    }
    write_matrix_csv(out / "state_output.csv", net.output_weights_by_hidden());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neuro-fuzzy computing system with a simulated memristor crossbar backend"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  if (const char* env = std::getenv("NFC_OUT_DIR"); env && *env) common.out_dir = env;
  app.add_option("--config", common.config_path, "INI file with [experiment], [network], [crossbar]");
  app.add_option("--out-dir", common.out_dir, "Output directory (env NFC_OUT_DIR)");
  app.add_option("--seed", common.seed, "Seed of every random stream");
  app.add_option("--backend", common.backend, "ideal or crossbar")
      ->check(CLI::IsMember({"ideal", "crossbar"}));
  app.add_flag("--paper-defaults", common.paper_defaults,
               "Pin the published parameters, ignoring config-file values for them");
  app.add_flag("--record-runtime", common.record_runtime, "Fill the runtime_ms report column");

  Overrides o;
  auto* model = app.add_subcommand("model", "Model one test function");
  model->add_option("--fn", o.fn, "g1..g5")->check(CLI::IsMember({"g1", "g2", "g3", "g4", "g5"}));
  model->add_option("--nz", o.nz, "Neurons on the output universe");
  model->add_option("--output-support", o.output_support, "Target half support, in output resolutions");
  model->add_option("--surface", o.surface, "Write an N x N prediction grid");
  add_network_flags(model, o);

  auto* classify = app.add_subcommand("classify", "Two-class classification on a synthetic set");
  classify->add_option("--dataset", o.dataset, "1..4")->check(CLI::Range(1, 4));
  add_network_flags(classify, o);

  auto* noise = app.add_subcommand("noise", "Model a function from noisy training pairs");
  noise->add_option("--fn", o.fn, "g1..g5")->check(CLI::IsMember({"g1", "g2", "g3", "g4", "g5"}));
  noise->add_option("--variance", o.noise_variance, "Gaussian noise variance");
  noise->add_option("--nz", o.nz, "Neurons on the output universe");
  noise->add_option("--surface", o.surface, "Write an N x N prediction grid");
  add_network_flags(noise, o);

  auto* fault = app.add_subcommand("fault", "Model a function on partially distorted crossbars");
  fault->add_option("--fn", o.fn, "g1..g5")->check(CLI::IsMember({"g1", "g2", "g3", "g4", "g5"}));
  fault->add_option("--fraction", o.fault_fraction, "Fraction of distorted cross-points");
  fault->add_option("--nz", o.nz, "Neurons on the output universe");
  fault->add_option("--surface", o.surface, "Write an N x N prediction grid");
  add_network_flags(fault, o);

  std::vector<std::string> only;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* suite = app.add_subcommand("suite", "Run every published table with default settings");
  suite->add_option("--only", only, "Subset of table1, table3, classification, noise, fault")
      ->check(CLI::IsMember({"table1", "table3", "classification", "noise", "fault"}));
  suite->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  CrossbarFlags xf;
  auto* xbar = app.add_subcommand("crossbar-compare",
                                  "Map a trained model onto crossbars and compare with the ideal network");
  xbar->add_option("--fn", o.fn, "g1..g5")->check(CLI::IsMember({"g1", "g2", "g3", "g4", "g5"}));
  xbar->add_option("--n-train", o.n_train, "Training samples");
  xbar->add_option("--probes", xf.probes, "Random probe inputs");
  xbar->add_option("--r-f", xf.r_f, "Feedback resistance (ohm)");
  xbar->add_option("--tolerance", xf.tolerance, "Relative tolerance per output");
  xbar->add_flag("--sweep-only", xf.sweep_only, "Only write the device weight sweep");
  xbar->add_flag("--dump-crossbars", xf.dump_crossbars, "Write memristance matrices");

  std::string state_path;
  bool matrices = false;
  auto* dump = app.add_subcommand("dump-state", "Print a saved network state");
  dump->add_option("state", state_path, "State file")->required();
  dump->add_flag("--matrices", matrices, "Also write weight matrices as CSV to --out-dir");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*model) return cmd_single(nfc::ExperimentKind::Modeling, common, o);
    if (*classify) return cmd_single(nfc::ExperimentKind::Classification, common, o);
    if (*noise) return cmd_single(nfc::ExperimentKind::Noise, common, o);
    if (*fault) return cmd_single(nfc::ExperimentKind::Fault, common, o);
    if (*suite) return cmd_suite(common, only, jobs);
    if (*xbar) return cmd_crossbar_compare(common, o, xf);
    if (*dump) return cmd_dump_state(common, state_path, matrices);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nfc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
