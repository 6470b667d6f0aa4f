#include "error.hpp"

namespace governing {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NonSquarefree: return "NonSquarefree";
    case ErrorCode::DisallowedD: return "DisallowedD";
    case ErrorCode::MalformedField: return "MalformedField";
    case ErrorCode::AmbiguousPlace: return "AmbiguousPlace";
    case ErrorCode::NoSuchPlace: return "NoSuchPlace";
    case ErrorCode::MalformedToken: return "MalformedToken";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DiscriminantTooLarge: return "DiscriminantTooLarge";
    case ErrorCode::WildPlace: return "WildPlace";
    case ErrorCode::AvoidanceFailure: return "AvoidanceFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DeltaZero: return "DeltaZero";
    case ErrorCode::WrongPrimeForReal: return "WrongPrimeForReal";
    case ErrorCode::NonUnitValuation: return "NonUnitValuation";
    case ErrorCode::DuplicatePlace: return "DuplicatePlace";
    case ErrorCode::BasisNotCoprime: return "BasisNotCoprime";
    case ErrorCode::SetTooLarge: return "SetTooLarge";
    case ErrorCode::LedgerMismatch: return "LedgerMismatch";
    case ErrorCode::NotRationalBase: return "NotRationalBase";
    case ErrorCode::BadCongruence: return "BadCongruence";
    case ErrorCode::NonCoprimeModulus: return "NonCoprimeModulus";
    case ErrorCode::ArchimedeanRequiresP2: return "ArchimedeanRequiresP2";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

bool is_invariant_failure(ErrorCode code) {
  return code == ErrorCode::DimensionMismatch ||
         code == ErrorCode::LedgerMismatch || code == ErrorCode::Internal ||
         code == ErrorCode::AvoidanceFailure;
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(error_name(code)) + ": " + message);
}

}  // namespace governing
