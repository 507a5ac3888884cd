#include "qcorr/error.hpp"

namespace qcorr {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidProbabilities: return "InvalidProbabilities";
    case ErrorCode::OutOfTetrahedron: return "OutOfTetrahedron";
    case ErrorCode::BracketInvalid: return "BracketInvalid";
    case ErrorCode::SingularDesign: return "SingularDesign";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace qcorr
