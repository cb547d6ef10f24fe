#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gridres {

enum class ErrorCode {
  invalid_input,        // malformed or out-of-contract arguments
  field_mismatch,       // operands from different fields / arities
  division_by_zero,
  duplicate_node,       // repeated element where a set is required
  precondition,         // a mathematical hypothesis of the operation is not met
  budget_exceeded,      // search node limit hit
  verification_failed,  // an identity that must hold did not
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by batch inversion; carries the position of the offending entry.
class ZeroEntryError : public Error {
 public:
  explicit ZeroEntryError(std::size_t index)
      : Error(ErrorCode::division_by_zero,
              "zero entry at index " + std::to_string(index) + " cannot be inverted"),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace gridres
