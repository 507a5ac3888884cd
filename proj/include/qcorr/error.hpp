#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotHermitian,
  NegativeEigenvalue,
  InvalidState,
  DomainError,
  InvalidProbabilities,
  OutOfTetrahedron,
  BracketInvalid,
  SingularDesign,
  ParseError,
};

const char* to_string(ErrorCode code);

/// Single exception type for the library; the code tells callers which
/// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qcorr
