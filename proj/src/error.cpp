#include "qea/error.hpp"

namespace qea {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorCode::NoRootOfUnity: return "NoRootOfUnity";
    case ErrorCode::CharDividesEll: return "CharDividesEll";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::ZeroPoint: return "ZeroPoint";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::RelationViolation: return "RelationViolation";
    case ErrorCode::ResourceBudgetExceeded: return "ResourceBudgetExceeded";
    case ErrorCode::NormalizationFailure: return "NormalizationFailure";
    case ErrorCode::ZeroCocycle: return "ZeroCocycle";
    case ErrorCode::SpecValidation: return "SpecValidation";
    case ErrorCode::RecipeParse: return "RecipeParse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace qea
