#include "hpmkit/error.hpp"

namespace hpmkit {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZero: return "division by zero";
    case ErrorCode::ParseError: return "parse error";
    case ErrorCode::OutOfRange: return "out of range";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DegenerateApproximant: return "degenerate approximant";
    case ErrorCode::NodeCountNotFound: return "node count not found";
  }
  return "unknown error";
}

}  // namespace hpmkit
