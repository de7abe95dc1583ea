#pragma once

#include <stdexcept>
#include <string>

namespace tropical {

enum class ErrorCode {
  inversion_of_zero,
  domain,
  shape_mismatch,
  degenerate_input,
  precondition,
  parse,
  resource_cap,
  empty_set,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tropical
