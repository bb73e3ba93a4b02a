#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bhsp {

enum class ErrorKind {
  NotPrime,
  DegreeZero,
  FieldTooLarge,
  MixedContexts,
  DivisionByZero,
  EvenCharacteristic,
  FlavorMismatch,
  InvalidElement,
  GroupTooLarge,
  DuplicatePoints,
  NotUpperTriangular,
  BudgetExceeded,
  NotSquareGenerator,
  PromiseViolation,
  DimensionTooLarge,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this type; kind() carries the
// machine-readable category that the CLI maps to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bhsp
