#pragma once

#include <stdexcept>
#include <string>

namespace hyperdet {

enum class Errc {
  CompositeCharacteristic,
  ReducibleModulus,
  BoundExceeded,
  FieldMismatch,
  DivisionByZero,
  IncompatibleFields,
  DimensionMismatch,
  SingularMatrix,
  BudgetExceeded,
  NonPrimeField,
  FormatMismatch,
  NotDecreasing,
  BoxExceeded,
  IndexOutOfRange,
  SizeMismatch,
  NotFullCycle,
  CycleDetected,
  NonDivisibleCount,
  InvalidArgument,
  InternalInvariant,
};

const char* to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI's exit-code mapping) can dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hyperdet
