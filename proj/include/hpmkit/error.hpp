#pragma once

#include <stdexcept>
#include <string>

namespace hpmkit {

enum class ErrorCode {
  DivisionByZero,
  ParseError,
  OutOfRange,
  InvalidArgument,
  DegenerateApproximant,
  NodeCountNotFound,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure surfaced by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hpmkit
