#pragma once

#include <stdexcept>
#include <string>

namespace hda {

enum class ErrorKind {
  Syntax,
  AxiomViolation,
  InterfaceMismatch,
  NotInterval,
  TruncationMismatch,
  IllegalFace,
  InvalidHda,
  InvalidPath,
  InvalidMap,
  ShapeMismatch,
  NotSimple,
  PreconditionViolation,
  ImagesNotDisjoint,
  NotSeparated,
  IdentityOverlap,
  CellLimit,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hda
