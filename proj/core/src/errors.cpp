#include "minkprobe/errors.hpp"

namespace minkprobe {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EmptyMeasure: return "EmptyMeasure";
    case ErrorCode::NotProbability: return "NotProbability";
    case ErrorCode::NotZeroMean: return "NotZeroMean";
    case ErrorCode::DegenerateSupport: return "DegenerateSupport";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidPolytope: return "InvalidPolytope";
    case ErrorCode::InsufficientTrials: return "InsufficientTrials";
    case ErrorCode::MalformedCSV: return "MalformedCSV";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + (detail.empty() ? "" : ": " + detail)),
      code_(code) {}

}  // namespace minkprobe
