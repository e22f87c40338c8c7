#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace flatres {

///Thrown when a caller breaks a documented precondition (bad dimensions,
///mismatched grid shapes, out-of-range arguments). These are programming
///errors, not data errors.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

///Thrown when raster input cannot be parsed. The message names the line
///(and, where it helps, the offending token) so the user can fix the file.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

///Thrown when a file cannot be opened or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

///Thrown by the iterative reference resolver when its iteration cap is
///reached while undrained cells remain.
class NonconvergenceError : public std::runtime_error {
 public:
  NonconvergenceError(std::int64_t remaining, std::int32_t iterations)
      : std::runtime_error("flat resolution did not converge after " +
                           std::to_string(iterations) + " iterations; " +
                           std::to_string(remaining) + " cells still lack a flow direction"),
        remaining_(remaining) {}
  std::int64_t remaining() const { return remaining_; }

 private:
  std::int64_t remaining_;
};

}  // namespace flatres
