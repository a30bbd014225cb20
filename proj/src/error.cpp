#include "fuknagaev/error.hpp"

namespace fuknagaev {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_dimension: return "invalid-dimension";
    case ErrorCode::unsupported_exponent: return "unsupported-exponent";
    case ErrorCode::infinite_moment: return "infinite-moment";
    case ErrorCode::unsupported_function: return "unsupported-function";
    case ErrorCode::precondition_violation: return "precondition-violation";
    case ErrorCode::invalid_level: return "invalid-level";
    case ErrorCode::invalid_threshold: return "invalid-threshold";
    case ErrorCode::invalid_q: return "invalid-q";
    case ErrorCode::invalid_count: return "invalid-count";
    case ErrorCode::internal_inconsistency: return "internal-inconsistency";
    case ErrorCode::domain_error: return "domain-error";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace fuknagaev
