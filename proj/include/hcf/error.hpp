#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hcf {

enum class ErrorCode {
  QuadricNotSupported,
  DimensionTooSmall,
  ShapeMismatch,
  NotAComplexStructure,
  DegenerateBasis,
  UnknownType,
  SizeLimit,
  NonPositiveMetric,
  PastExtinction,
  OutOfDomain,
  NotPositive,
  LostPositivity,
  InvalidArgument,
  NoStaticForNonpositiveLambda,
  ThetaSingular,
  UnequalA,
  NotCEProduct,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Numeric failures map to CLI exit code 3, everything else to 2.
bool is_numeric_failure(ErrorCode code) noexcept;

/// Library-wide exception. what() reads "<CodeName>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace hcf
