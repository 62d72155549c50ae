#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace atl {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Floor-division or remainder with a zero divisor.
struct DivisionByZero : Error {
  using Error::Error;
};

// Term evaluation hit a variable with no binding in the environment.
struct UnboundVariable : Error {
  using Error::Error;
};

// nu2(0) is undefined (0 has no finite 2-adic valuation).
struct Nu2Zero : Error {
  using Error::Error;
};

// An argument fell outside an operation's documented domain.
struct DomainError : Error {
  using Error::Error;
};

// A computation would exceed the configured bit/point budget.
struct BudgetExceeded : Error {
  using Error::Error;
};

// A closed-form extraction was requested for a spec that fails the
// root-modulus / growth preconditions of the div-mod representation.
struct ValidityCheckFailed : Error {
  using Error::Error;
};

// An internal consistency condition that must hold mathematically was
// violated; indicates a bug or a misuse that corrupted an invariant.
struct InvariantViolation : Error {
  using Error::Error;
};

// Syntax error while parsing term text or a JSON payload.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line, std::size_t col)
      : Error(msg + " at line " + std::to_string(line) + ", column " +
              std::to_string(col)),
        line(line),
        col(col) {}
  std::size_t line = 0;
  std::size_t col = 0;
};

}  // namespace atl
