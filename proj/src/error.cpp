#include "spheretik/error.hpp"

namespace spheretik {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateNode: return "DuplicateNode";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::MissingDatum: return "MissingDatum";
    case ErrorCode::NonUnitDatum: return "NonUnitDatum";
    case ErrorCode::UnanchoredComponent: return "UnanchoredComponent";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::InvalidNodeWeight: return "InvalidNodeWeight";
    case ErrorCode::InvalidEdgeWeight: return "InvalidEdgeWeight";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::DegenerateVector: return "DegenerateVector";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::MalformedEdgeMatrix: return "MalformedEdgeMatrix";
    case ErrorCode::FixedNodeViolation: return "FixedNodeViolation";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::KeyMismatch: return "KeyMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace spheretik
