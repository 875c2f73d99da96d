#include "nfc/serialize.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <iterator>
#include <string>

#include <fmt/format.h>

#include "nfc/io.hpp"
#include "nfc/error.hpp"

namespace nfc {

namespace {

constexpr std::array<char, 4> kMagic = {'N', 'F', 'C', 'S'};

class Writer {
 public:
  void raw(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::byte*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  void u8(std::uint8_t v) { out_.push_back(std::byte{v}); }
  void u32(std::uint32_t v) { le(v); }
  void u64(std::uint64_t v) { le(v); }
  void i32(std::int32_t v) { le(static_cast<std::uint32_t>(v)); }
  void f64(double v) { le(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    raw(s.data(), s.size());
  }
  void matrix(const Matrix& m) {
    for (double v : m.data()) f64(v);
  }
  std::vector<std::byte> take() { return std::move(out_); }

 private:
  template <typename T>
  void le(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFF));
    }
  }
  std::vector<std::byte> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::byte> in) : in_(in) {}

  std::span<const std::byte> take(std::size_t n) {
    if (n > in_.size() - pos_) {
      throw Error(Errc::MalformedPayload, fmt::format("truncated payload at byte {}", pos_));
    }
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }
  std::uint32_t u32() { return le<std::uint32_t>(); }
  std::uint64_t u64() { return le<std::uint64_t>(); }
  std::int32_t i32() { return static_cast<std::int32_t>(le<std::uint32_t>()); }
  double f64() { return std::bit_cast<double>(le<std::uint64_t>()); }
  std::string str() {
    const auto n = u32();
    auto b = take(n);
    return std::string(reinterpret_cast<const char*>(b.data()), b.size());
  }
  /// Guards allocations against garbage sizes before reading a rows x cols block.
  Matrix matrix(std::uint64_t rows, std::uint64_t cols) {
    if (cols != 0 && rows > (in_.size() - pos_) / 8 / cols) {
      throw Error(Errc::MalformedPayload, "matrix larger than remaining payload");
    }
    Matrix m(rows, cols);
    for (double& v : m.data()) v = f64();
    return m;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  template <typename T>
  T le() {
    auto b = take(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(std::to_integer<std::uint8_t>(b[i])) << (8 * i);
    return v;
  }
  std::span<const std::byte> in_;
  std::size_t pos_ = 0;
};

void write_universe(Writer& w, const Universe& u) {
  w.f64(u.lo());
  w.f64(u.hi());
  w.f64(u.resolution());
  w.u64(u.count());
}

Universe read_universe(Reader& r) {
  const double lo = r.f64();
  const double hi = r.f64();
  const double res = r.f64();
  const auto count = r.u64();
  try {
    Universe u = Universe::build(lo, hi, res);
    if (u.count() != count) throw Error(Errc::MalformedPayload, "universe count mismatch");
    return u;
  } catch (const Error& e) {
    throw Error(Errc::MalformedPayload, e.what());
  }
}

}  // namespace

std::vector<std::byte> serialize(const Network& net) {
  const auto& cfg = net.config();
  Writer w;
  w.raw(kMagic.data(), kMagic.size());
  w.u32(kStateFormatVersion);

  w.u32(static_cast<std::uint32_t>(cfg.inputs.size()));
  for (const auto& g : cfg.inputs) {
    w.str(g.name);
    write_universe(w, g.universe);
    w.f64(g.half_support);
  }
  write_universe(w, cfg.output);
  w.f64(cfg.output_half_support);
  w.i32(cfg.p);
  w.f64(cfg.alpha);
  w.f64(cfg.novelty_threshold);
  w.u8(static_cast<std::uint8_t>(cfg.hebbian_tnorm.kind()));
  w.i32(cfg.hebbian_tnorm.power());

  const std::size_t n = net.minterm_count();
  w.u64(n);
  for (std::size_t g = 0; g < cfg.inputs.size(); ++g) w.matrix(net.input_weights(g));
  // W_out is written nz x N_v row-major.
  for (std::size_t i = 0; i < cfg.output.count(); ++i) {
    for (std::size_t j = 0; j < n; ++j) w.f64(net.output_weight(i, j));
  }

  const auto& faults = net.faults();
  w.u8(faults ? 1 : 0);
  if (faults) {
    w.u64(faults->capacity);
    for (std::size_t g = 0; g < cfg.inputs.size(); ++g) {
      w.matrix(faults->input_mask[g]);
      w.matrix(faults->input_value[g]);
    }
    w.matrix(faults->output_mask);
    w.matrix(faults->output_value);
  }
  return w.take();
}

Network deserialize(std::span<const std::byte> bytes) {
  Reader r(bytes);
  const auto magic = r.take(kMagic.size());
  for (std::size_t i = 0; i < kMagic.size(); ++i) {
    if (std::to_integer<char>(magic[i]) != kMagic[i]) {
      throw Error(Errc::MalformedPayload, "bad magic");
    }
  }
  const auto version = r.u32();
  if (version != kStateFormatVersion) {
    throw Error(Errc::VersionMismatch,
                fmt::format("state version {} (expected {})", version, kStateFormatVersion));
  }

  NetworkConfig cfg;
  const auto groups = r.u32();
  if (groups == 0 || groups > 1024) throw Error(Errc::MalformedPayload, "bad group count");
  for (std::uint32_t g = 0; g < groups; ++g) {
    InputGroup ig;
    ig.name = r.str();
    ig.universe = read_universe(r);
    ig.half_support = r.f64();
    cfg.inputs.push_back(std::move(ig));
  }
  cfg.output = read_universe(r);
  cfg.output_half_support = r.f64();
  cfg.p = r.i32();
  cfg.alpha = r.f64();
  cfg.novelty_threshold = r.f64();
  const auto kind = r.u8();
  const auto power = r.i32();
  switch (static_cast<TNorm::Kind>(kind)) {
    case TNorm::Kind::Min: cfg.hebbian_tnorm = TNorm::min(); break;
    case TNorm::Kind::Product: cfg.hebbian_tnorm = TNorm::product(); break;
    case TNorm::Kind::TansigShifted: cfg.hebbian_tnorm = TNorm::tansig_shifted(); break;
    case TNorm::Kind::PowerSum:
      if (power < 1) throw Error(Errc::MalformedPayload, "bad t-norm power");
      cfg.hebbian_tnorm = TNorm::power_sum(power);
      break;
    default: throw Error(Errc::MalformedPayload, "unknown t-norm kind");
  }

  const auto n = r.u64();
  std::vector<Matrix> w_in;
  for (const auto& g : cfg.inputs) w_in.push_back(r.matrix(n, g.universe.count()));
  const Matrix w_out = r.matrix(cfg.output.count(), n);
  Matrix by_hidden(n, cfg.output.count());
  for (std::size_t i = 0; i < w_out.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) by_hidden(j, i) = w_out(i, j);
  }

  std::optional<FaultOverlay> faults;
  const auto has_faults = r.u8();
  if (has_faults > 1) throw Error(Errc::MalformedPayload, "bad fault flag");
  if (has_faults == 1) {
    FaultOverlay f;
    f.capacity = r.u64();
    for (const auto& g : cfg.inputs) {
      f.input_mask.push_back(r.matrix(f.capacity, g.universe.count()));
      f.input_value.push_back(r.matrix(f.capacity, g.universe.count()));
    }
    f.output_mask = r.matrix(cfg.output.count(), f.capacity);
    f.output_value = r.matrix(cfg.output.count(), f.capacity);
    faults = std::move(f);
  }
  if (!r.done()) throw Error(Errc::MalformedPayload, "trailing bytes after state");

  try {
    return Network::restore(std::move(cfg), std::move(w_in), std::move(by_hidden), std::move(faults));
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedPayload) throw;
    throw Error(Errc::MalformedPayload, e.what());
  }
}

void save_state(const std::filesystem::path& path, const Network& net) {
  const auto bytes = serialize(net);
  write_file_atomically(path, std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

Network load_state(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, fmt::format("cannot open '{}'", path.string()));
  std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(std::as_bytes(std::span(buf)));
}

}  // namespace nfc
