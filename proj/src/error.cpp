#include "hcf/error.hpp"

namespace hcf {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::QuadricNotSupported: return "QuadricNotSupported";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotAComplexStructure: return "NotAComplexStructure";
    case ErrorCode::DegenerateBasis: return "DegenerateBasis";
    case ErrorCode::UnknownType: return "UnknownType";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::NonPositiveMetric: return "NonPositiveMetric";
    case ErrorCode::PastExtinction: return "PastExtinction";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::LostPositivity: return "LostPositivity";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoStaticForNonpositiveLambda: return "NoStaticForNonpositiveLambda";
    case ErrorCode::ThetaSingular: return "ThetaSingular";
    case ErrorCode::UnequalA: return "UnequalA";
    case ErrorCode::NotCEProduct: return "NotCEProduct";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

bool is_numeric_failure(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::PastExtinction:
    case ErrorCode::OutOfDomain:
    case ErrorCode::NotPositive:
    case ErrorCode::LostPositivity:
    case ErrorCode::ThetaSingular:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace hcf
