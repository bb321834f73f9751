#pragma once

#include <stdexcept>
#include <string>

namespace geolat {

enum class ErrorKind {
  SizeBound,
  InvalidArgument,
  NotPrime,
  NotAtom,
  DimensionMismatch,
  ParseError,
  NoBottom,
  NoTop,
  NotPoset,
  NotLattice,
  NotGraded,
  NotComparable,
  NonzeroDiagonal,
  InsufficientLength,
  NoConvergence,
};

const char* to_string(ErrorKind kind);

class LatticeError : public std::runtime_error {
 public:
  LatticeError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace geolat
