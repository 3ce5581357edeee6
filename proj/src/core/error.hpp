#pragma once

#include <stdexcept>
#include <string>

namespace swipt {

enum class ErrorCode {
  kInvalidArgument = 1,
  kInfeasible = 2,
  kParse = 3,
  kIo = 4,
  kNumerical = 5,
};

// Every failure raised by the library carries one of the codes above so the
// C API can map it onto a status value without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, double max_q_bar)
      : Error(ErrorCode::kInfeasible, what), max_q_bar_(max_q_bar) {}
  double max_q_bar() const noexcept { return max_q_bar_; }

 private:
  double max_q_bar_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(ErrorCode::kParse, what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace swipt
