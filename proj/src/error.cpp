#include "krsym/error.hpp"

namespace krsym {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::InvalidAction: return "InvalidAction";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DegreeError: return "DegreeError";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::NotAnEdge: return "NotAnEdge";
    case ErrorKind::NotInEdgeStabilizer: return "NotInEdgeStabilizer";
    case ErrorKind::NotTT: return "NotTT";
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::NonOrientable: return "NonOrientable";
    case ErrorKind::CountMismatch: return "CountMismatch";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::NoBoundaryRoot: return "NoBoundaryRoot";
    case ErrorKind::BoundaryCollision: return "BoundaryCollision";
    case ErrorKind::ExtremeAtom: return "ExtremeAtom";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

ParseError::ParseError(ErrorKind kind, std::size_t position,
                       const std::string& message)
    : Error(kind, message + " at position " + std::to_string(position)),
      position_(position) {}

}  // namespace krsym
