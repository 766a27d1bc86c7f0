#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace treedyn {

enum class ErrorKind {
  SymbolOutOfRange,
  ConeTooShallow,
  PoleAtHalfPeriod,
  ExponentOutOfRange,
  RadiusExhausted,
  KernelTooShort,
  NoConvergence,
  QuadratureNotConverged,
  ZeroCoefficient,
  ConstantComposition,
  NoRootFound,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// True for failures of an iterative numeric procedure (as opposed to bad input).
bool is_numeric_failure(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace treedyn
