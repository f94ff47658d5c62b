#pragma once

#include <stdexcept>
#include <string>

namespace qea {

enum class ErrorCode {
  NonPrimeModulus,
  NoRootOfUnity,
  CharDividesEll,
  ContextMismatch,
  ZeroPoint,
  OutOfRange,
  RelationViolation,
  ResourceBudgetExceeded,
  NormalizationFailure,
  ZeroCocycle,
  SpecValidation,
  RecipeParse,
  InvalidArgument,
  Io,
  InvariantViolation,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qea
