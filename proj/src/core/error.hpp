#pragma once

#include <stdexcept>
#include <string>

namespace yf {

enum class ErrorCode {
  InvalidArgument,
  ShapeError,
  InvalidFunction,
  DegenerateParameter,
  HypothesisViolated,
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code);

// Every failure raised by the core carries one of the codes above so the C API
// can translate it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace yf
