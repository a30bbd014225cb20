#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fuknagaev {

enum class ErrorCode {
  invalid_dimension,
  unsupported_exponent,
  infinite_moment,
  unsupported_function,
  precondition_violation,
  invalid_level,
  invalid_threshold,
  invalid_q,
  invalid_count,
  internal_inconsistency,
  domain_error,
  io_error,
  invalid_argument,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable error category.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fuknagaev
