#include "fls/error.hpp"

namespace fls {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_set: return "invalid-set";
    case ErrorCode::invalid_resolution: return "invalid-resolution";
    case ErrorCode::invalid_theta: return "invalid-theta";
    case ErrorCode::invalid_spectrum: return "invalid-spectrum";
    case ErrorCode::out_of_range: return "out-of-range";
    case ErrorCode::unsupported_order: return "unsupported-order";
    case ErrorCode::refine_failure: return "refine-failure";
    case ErrorCode::admissibility_failure: return "admissibility-failure";
    case ErrorCode::unsupported_set: return "unsupported-set";
    case ErrorCode::degenerate_window: return "degenerate-window";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace fls
