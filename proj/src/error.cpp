#include "bhsp/error.hpp"

namespace bhsp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DegreeZero: return "DegreeZero";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::MixedContexts: return "MixedContexts";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorKind::FlavorMismatch: return "FlavorMismatch";
    case ErrorKind::InvalidElement: return "InvalidElement";
    case ErrorKind::GroupTooLarge: return "GroupTooLarge";
    case ErrorKind::DuplicatePoints: return "DuplicatePoints";
    case ErrorKind::NotUpperTriangular: return "NotUpperTriangular";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotSquareGenerator: return "NotSquareGenerator";
    case ErrorKind::PromiseViolation: return "PromiseViolation";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace bhsp
