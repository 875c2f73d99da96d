#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nfc {

enum class Errc {
  // fuzzy
  NonPositiveResolution,
  EmptyRange,
  MisalignedRange,
  OutOfRange,
  NegativeSupport,
  AllZeroMembership,
  UniverseMismatch,
  ZeroVector,
  EmptyOperands,
  OperandOutOfRange,
  // network
  InvalidConfig,
  UntrainedNetwork,
  TargetOutOfRange,
  Unclassifiable,
  MalformedPayload,
  VersionMismatch,
  // crossbar
  ReadDisturbRisk,
  DimensionMismatch,
  RowInUse,
  VoltageEncodingOutOfRange,
  WeightOutOfRange,
  CapacityExceeded,
  // experiments
  DomainViolation,
  ConstantActual,
  LengthMismatch,
  UnknownDatasetId,
  InvalidArgument,
  Io,
};

std::string_view to_string(Errc code) noexcept;

/// Exception carrying a machine-checkable error code next to the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace nfc
