#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gibbs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text.  Carries the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Evaluation outside a function's domain (log of a non-positive number,
/// division by zero, a point outside [-1, 1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration: bad parameters, malformed config documents.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed (non-convergence, loss of positivity).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gibbs
