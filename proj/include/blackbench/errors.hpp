#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blackbench {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke a documented precondition (wrong dimension, non-finite input, bad index).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// The operation exists in the interface but the problem does not support it.
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

/// A suite slot exists for index arithmetic but has no function behind it.
class NotImplemented : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace blackbench
