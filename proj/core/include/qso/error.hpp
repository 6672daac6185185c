#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qso {

enum class ErrorCode {
  kNotASimplexPoint,
  kBadDimension,
  kDimensionMismatch,
  kBadCoefficient,
  kAllLociZero,
  kEigensolverFailure,
  kNonSimpleEigenvalueOne,
  kDegenerateNormalization,
  kScenarioParseError,
  kSuiteParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. The code is
/// stable and is what front ends switch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Input errors are the caller's fault (bad data), as opposed to
  /// numerical refusals or internal assertions.
  bool is_input_error() const noexcept;

 private:
  ErrorCode code_;
};

}  // namespace qso
