#pragma once

#include <stdexcept>
#include <string>

namespace nsvosa {

enum class ErrorKind {
  NonHomogeneous,
  ShrinkNotAllowed,
  EmptyWindow,
  UnknownVariable,
  IllFormedShift,
  WindowMiss,
  BadSpec,
  UnknownIdentity,
  TableIncomplete,
  WrongFlavor,
  UnknownAxiom,
  UnknownConsequence,
  NotFound,
  NotInSPrime,
  NoRationalForm,
  WindowTooNarrow,
  GradingViolation,
  TooSmall,
  ConfigError,
  ParseError,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nsvosa
