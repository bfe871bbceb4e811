#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fls {

enum class ErrorCode {
  invalid_argument = 1,
  invalid_set,
  invalid_resolution,
  invalid_theta,
  invalid_spectrum,
  out_of_range,
  unsupported_order,
  refine_failure,
  admissibility_failure,
  unsupported_set,
  degenerate_window,
  parse_error,
  io_error,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure inside the core is reported through this type; the C layer
// maps `code()` onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace fls
