#pragma once

// CSV emission for experiment reports and prediction surfaces.

#include <iosfwd>
#include <span>

#include "nfc/experiments.hpp"

namespace nfc {

struct ReportOptions {
  /// Wall-clock timings make otherwise identical files differ, so they are
  /// only written on request.
  bool record_runtime = false;
};

void write_report_header(std::ostream& out);
void write_report_row(std::ostream& out, const ExperimentReport& report,
                      const ReportOptions& options = {});
/// Row for a run that failed before producing results.
void write_failed_row(std::ostream& out, const ExperimentConfig& config, std::string_view status);

void write_surface_csv(std::ostream& out, std::span<const SurfacePoint> surface);

}  // namespace nfc
