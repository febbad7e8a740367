#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace krsym {

enum class ErrorKind {
  CapExceeded,
  InvalidAction,
  InvalidArgument,
  ParseError,
  DegreeError,
  Overflow,
  NotAbelian,
  NotAnEdge,
  NotInEdgeStabilizer,
  NotTT,
  Malformed,
  NonOrientable,
  CountMismatch,
  NotATree,
  NoBoundaryRoot,
  BoundaryCollision,
  ExtremeAtom,
  InvalidModel,
  TooLarge,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// ParseError carrying the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t position, const std::string& message);

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace krsym
