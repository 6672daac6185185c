#include "qso/error.hpp"

namespace qso {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNotASimplexPoint: return "NotASimplexPoint";
    case ErrorCode::kBadDimension: return "BadDimension";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kBadCoefficient: return "BadCoefficient";
    case ErrorCode::kAllLociZero: return "AllLociZero";
    case ErrorCode::kEigensolverFailure: return "EigensolverFailure";
    case ErrorCode::kNonSimpleEigenvalueOne: return "NonSimpleEigenvalueOne";
    case ErrorCode::kDegenerateNormalization: return "DegenerateNormalization";
    case ErrorCode::kScenarioParseError: return "ScenarioParseError";
    case ErrorCode::kSuiteParseError: return "SuiteParseError";
  }
  return "Unknown";
}

bool Error::is_input_error() const noexcept {
  switch (code_) {
    case ErrorCode::kNotASimplexPoint:
    case ErrorCode::kBadDimension:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kBadCoefficient:
    case ErrorCode::kScenarioParseError:
    case ErrorCode::kSuiteParseError:
      return true;
    default:
      return false;
  }
}

}  // namespace qso
