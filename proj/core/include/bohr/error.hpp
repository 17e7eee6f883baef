#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bohr {

enum class ErrorCode {
  invalid_input,
  dimension_mismatch,
  duplicate_exponent,
  dependent_basis,
  out_of_domain,
  basis_mismatch,
  budget_exceeded,
  representation_mismatch,
  parse_error,
  overflow,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bohr
