#ifndef GSPKIT_ERRORS_HPP
#define GSPKIT_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gspkit {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied argument violates an operation's precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. `line` is 1-based; 0 when not attributable.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A computation would exceed its configured resource budget.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& message, std::uint64_t required)
      : Error(message), required_(required) {}
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

// The request has no feasible answer (e.g. tall items wider than the strip).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A packing or layout handed to an operation is not valid.
class VerificationError : public Error {
 public:
  using Error::Error;
};

// An internal invariant was breached. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gspkit

#endif  // GSPKIT_ERRORS_HPP
