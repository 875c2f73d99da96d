#include "nfc/error.hpp"

namespace nfc {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonPositiveResolution: return "NonPositiveResolution";
    case Errc::EmptyRange: return "EmptyRange";
    case Errc::MisalignedRange: return "MisalignedRange";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NegativeSupport: return "NegativeSupport";
    case Errc::AllZeroMembership: return "AllZeroMembership";
    case Errc::UniverseMismatch: return "UniverseMismatch";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::EmptyOperands: return "EmptyOperands";
    case Errc::OperandOutOfRange: return "OperandOutOfRange";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::UntrainedNetwork: return "UntrainedNetwork";
    case Errc::TargetOutOfRange: return "TargetOutOfRange";
    case Errc::Unclassifiable: return "Unclassifiable";
    case Errc::MalformedPayload: return "MalformedPayload";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::ReadDisturbRisk: return "ReadDisturbRisk";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::RowInUse: return "RowInUse";
    case Errc::VoltageEncodingOutOfRange: return "VoltageEncodingOutOfRange";
    case Errc::WeightOutOfRange: return "WeightOutOfRange";
    case Errc::CapacityExceeded: return "CapacityExceeded";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::ConstantActual: return "ConstantActual";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::UnknownDatasetId: return "UnknownDatasetId";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace nfc
