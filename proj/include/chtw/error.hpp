#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chtw {

enum class ErrorCode {
  InvalidAxis,
  IndexOutOfRange,
  NonFiniteInput,
  ShapeMismatch,
  UnvalidatedSystem,
  LengthMismatch,
  ParseError,
  NegativeResource,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace chtw
