#pragma once

#include <stdexcept>
#include <string>

namespace salaser {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the documented domain (negative rates, I >= 1/2, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// The steady-state manifold is not one-dimensional (e.g. omega = tau = 0).
class DegenerateSteadyState : public Error {
 public:
  using Error::Error;
};

// Occupation leaks into the top Fock levels; a larger n_max is required.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Solver finished but the result violates a tolerance (residual, positivity,
// row independence).
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class StepSizeError : public Error {
 public:
  using Error::Error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

}  // namespace salaser
