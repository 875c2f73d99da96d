#include "nfc/report.hpp"

#include <ostream>
#include <string>

#include <fmt/format.h>

namespace nfc {

namespace {

std::string dataset_label(const ExperimentConfig& c) {
  return c.kind == ExperimentKind::Classification ? "set" + c.target : c.target;
}

std::size_t output_count(const ExperimentConfig& c) {
  return c.kind == ExperimentKind::Classification ? 2 : c.nz;
}

std::string config_columns(const ExperimentConfig& c) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{}", dataset_label(c), c.n_train, c.n_test,
                     c.seed, c.p, c.alpha, c.threshold, c.nx, c.ny, output_count(c));
}

}  // namespace

void write_report_header(std::ostream& out) {
  out << "function_or_dataset,n_train,n_test,seed,p,alpha,threshold,nx,ny,nz,n_minterms,"
         "fvu_or_rate,paper_reference_value,paper_minterms,runtime_ms,untrained_points,status\n";
}

void write_report_row(std::ostream& out, const ExperimentReport& r, const ReportOptions& options) {
  out << fmt::format("{},{},{},{},{},{},{},{}\n", config_columns(r.config), r.n_minterms,
                     r.metric, r.paper_value ? fmt::format("{}", *r.paper_value) : "",
                     r.paper_minterms ? fmt::format("{}", *r.paper_minterms) : "",
                     options.record_runtime ? fmt::format("{:.1f}", r.runtime_ms) : "",
                     r.untrained_points, r.status);
}

void write_failed_row(std::ostream& out, const ExperimentConfig& config, std::string_view status) {
  std::string clean(status);
  for (char& ch : clean) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  out << fmt::format("{},,,,,,,{}\n", config_columns(config), clean);
}

void write_surface_csv(std::ostream& out, std::span<const SurfacePoint> surface) {
  out << "x,y,predicted,actual\n";
  for (const auto& s : surface) {
    out << fmt::format("{},{},{},{}\n", s.x, s.y, s.predicted, s.actual);
  }
}

}  // namespace nfc
