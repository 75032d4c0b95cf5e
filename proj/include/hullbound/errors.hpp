#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hullbound {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed expression or domain text. offset() is the byte position of the
// first offending character (end-of-input errors point one past the last byte).
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

// Expression evaluation failed: log of a nonpositive value, division by zero,
// zero raised to a negative power, or a non-finite result. Carries the input x.
class EvalError : public Error {
public:
  EvalError(const std::string& msg, double x)
      : Error(msg + " (at x = " + std::to_string(x) + ")"), x_(x) {}

  double x() const noexcept { return x_; }

private:
  double x_;
};

}  // namespace hullbound
