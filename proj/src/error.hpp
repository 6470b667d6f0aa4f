#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace governing {

enum class ErrorCode {
  InvalidArgument,
  NotPrime,
  NonSquarefree,
  DisallowedD,
  MalformedField,
  AmbiguousPlace,
  NoSuchPlace,
  MalformedToken,
  ZeroElement,
  FieldMismatch,
  DiscriminantTooLarge,
  WildPlace,
  AvoidanceFailure,
  DimensionMismatch,
  DeltaZero,
  WrongPrimeForReal,
  NonUnitValuation,
  DuplicatePlace,
  BasisNotCoprime,
  SetTooLarge,
  LedgerMismatch,
  NotRationalBase,
  BadCongruence,
  NonCoprimeModulus,
  ArchimedeanRequiresP2,
  Internal,
};

std::string_view error_name(ErrorCode code);

/// True for codes that signal an arithmetic inconsistency inside the library
/// rather than bad input.
bool is_invariant_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace governing
