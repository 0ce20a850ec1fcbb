#pragma once

#include <stdexcept>
#include <string>

namespace specwire {

/// Bad input: malformed arguments, violated preconditions, invalid graphs.
/// The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Edge-list / CSV syntax error. Carries the 1-based line number.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Matrix dimension above the dense eigensolver cap.
class SizeCapError : public ValidationError {
 public:
  SizeCapError(std::size_t n, std::size_t cap)
      : ValidationError("matrix dimension " + std::to_string(n) + " exceeds dense cap " +
                        std::to_string(cap) + "; use a smaller graph"),
        n_(n),
        cap_(cap) {}

  std::size_t dimension() const noexcept { return n_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t n_;
  std::size_t cap_;
};

/// Non-convergence, NaN, divergence. The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace specwire
