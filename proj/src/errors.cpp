#include "hyperdet/errors.hpp"

namespace hyperdet {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::CompositeCharacteristic: return "CompositeCharacteristic";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::IncompatibleFields: return "IncompatibleFields";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NonPrimeField: return "NonPrimeField";
    case Errc::FormatMismatch: return "FormatMismatch";
    case Errc::NotDecreasing: return "NotDecreasing";
    case Errc::BoxExceeded: return "BoxExceeded";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::NotFullCycle: return "NotFullCycle";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::NonDivisibleCount: return "NonDivisibleCount";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace hyperdet
