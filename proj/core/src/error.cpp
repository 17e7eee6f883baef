#include "bohr/error.hpp"

namespace bohr {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::duplicate_exponent: return "duplicate_exponent";
    case ErrorCode::dependent_basis: return "dependent_basis";
    case ErrorCode::out_of_domain: return "out_of_domain";
    case ErrorCode::basis_mismatch: return "basis_mismatch";
    case ErrorCode::budget_exceeded: return "budget_exceeded";
    case ErrorCode::representation_mismatch: return "representation_mismatch";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::overflow: return "overflow";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace bohr
