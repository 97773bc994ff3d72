#pragma once

#include <stdexcept>
#include <string>

namespace dgldpc {

// Base for every error the library raises on purpose. The CLI maps the three
// subtrees to distinct exit codes (input 1, feasibility 2, capacity 3).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- invalid input (exit 1) ---

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConfigParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class FractionSumError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateTypeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SeedRequiredError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// --- infeasible query / hypothesis not met (exit 2) ---

class FeasibilityError : public Error {
 public:
  using Error::Error;
};

class NonIntegralInstanceError : public FeasibilityError {
 public:
  NonIntegralInstanceError(const std::string& msg, long suggested_n)
      : FeasibilityError(msg), suggested_n(suggested_n) {}
  long suggested_n;  // smallest valid n >= the rejected one
};

class InfeasibleRatioError : public FeasibilityError {
 public:
  using FeasibilityError::FeasibilityError;
};

class PNotDefinedError : public FeasibilityError {
 public:
  using FeasibilityError::FeasibilityError;
};

class TheoremHypothesisError : public FeasibilityError {
 public:
  using FeasibilityError::FeasibilityError;
};

class EmptySequenceError : public FeasibilityError {
 public:
  using FeasibilityError::FeasibilityError;
};

// --- problem too large for the configured guards (exit 3) ---

class CapacityError : public Error {
 public:
  using Error::Error;
};

// Numerical search failed its tolerance; carries diagnostics in the message.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace dgldpc
