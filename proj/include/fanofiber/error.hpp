#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fanofiber {

enum class ErrorCode {
  NotFullDimensional,
  OriginNotInterior,
  DuplicateVertex,
  RedundantPoint,
  TooManyVertices,
  NotSimplicial,
  NotSmooth,
  NonIntegralSolution,
  NonPositive,
  NonIntegralRelation,
  IncompleteRelationList,
  DimensionMismatch,
  OddDimension,
  DivisibilityViolated,
  IndexOutOfRange,
  NotDirectSum,
  ParseError,
  InvariantViolation,
  Overflow,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::RedundantPoint: return "RedundantPoint";
    case ErrorCode::TooManyVertices: return "TooManyVertices";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::NotSmooth: return "NotSmooth";
    case ErrorCode::NonIntegralSolution: return "NonIntegralSolution";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::NonIntegralRelation: return "NonIntegralRelation";
    case ErrorCode::IncompleteRelationList: return "IncompleteRelationList";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::DivisibilityViolated: return "DivisibilityViolated";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotDirectSum: return "NotDirectSum";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// code name is what reports and the CLI print.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) +
                           (detail.empty() ? "" : ": " + detail)),
        code_(code) {}
  explicit Error(ErrorCode code) : Error(code, "") {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fanofiber
