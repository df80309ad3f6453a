#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ddc {

enum class ErrorCode {
  DimensionAsymmetry,
  SingularPairing,
  SpaceMismatch,
  DegreeOutOfRange,
  MissingAmple,
  NoFactorization,
  InvalidArgument,
  SingularMatrix,
  NonConvergence,
  NotAnEigenvalue,
  IllConditionedFit,
  OutOfRange,
  DivergenceSuspected,
  DuplicateAbscissa,
  NegativeValue,
  OutOfDomain,
  LengthMismatch,
  NonPositiveR,
  SingularBlock,
  NotWeil,
  NonCommuting,
  BadCodimension,
  NotRepresentable,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ddc
