#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace minkprobe {

// Domain errors surfaced by the library. The CLI prints error_name() verbatim.
enum class ErrorCode {
  Unbounded,
  Empty,
  EmptyInput,
  EmptyMeasure,
  NotProbability,
  NotZeroMean,
  DegenerateSupport,
  DimensionMismatch,
  InvalidArgument,
  InvalidPolytope,
  InsufficientTrials,
  MalformedCSV,
  MalformedInput,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace minkprobe
