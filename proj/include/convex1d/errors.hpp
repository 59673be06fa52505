#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace convex1d {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two words (or a word and a matrix) disagree on length.
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// A caller-side precondition was violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// row_stats on a row without a well-defined 1-block / 0-block.
class DegenerateRow : public Error {
 public:
  using Error::Error;
};

/// A matrix does not satisfy the regime it was claimed to satisfy.
class RegimeViolation : public Error {
 public:
  using Error::Error;
};

/// A brute-force routine was asked for an instance past its guard.
class SizeLimit : public Error {
 public:
  using Error::Error;
};

/// An interval is empty, inverted, or collapses under shrinking.
class DegenerateInterval : public Error {
 public:
  using Error::Error;
};

/// Malformed code file or arrangement document. Line 0 means the problem
/// is not tied to one line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace convex1d
