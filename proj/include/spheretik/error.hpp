#pragma once

#include <stdexcept>
#include <string>

namespace spheretik {

enum class ErrorCode {
  DuplicateNode,
  DanglingEdge,
  SelfLoop,
  DuplicateEdge,
  MissingDatum,
  NonUnitDatum,
  UnanchoredComponent,
  UnknownNode,
  InvalidNodeWeight,
  InvalidEdgeWeight,
  NonFiniteValue,
  DegenerateVector,
  NoConvergence,
  MalformedEdgeMatrix,
  FixedNodeViolation,
  MissingValue,
  KeyMismatch,
  ParseError,
  IoError,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

/// All recoverable failures surface as this exception; `code()` lets callers
/// branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spheretik
