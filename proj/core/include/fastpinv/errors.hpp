#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fastpinv {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not fit, or a matrix that must be symmetric is not.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A matrix that must be positive (semi)definite is not.
class DefinitenessError : public Error {
 public:
  using Error::Error;
};

// NaN or Inf appeared in an input or a computed result.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

// An invalid configuration or generator spec.
class SpecError : public Error {
 public:
  using Error::Error;
};

// Input with zero norm where a direction is required.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Malformed matrix text or report CSV.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An iterative method failed to reach its stopping criterion.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual, std::size_t sweeps)
      : Error(what), last_residual_(last_residual), sweeps_(sweeps) {}

  double last_residual() const noexcept { return last_residual_; }
  std::size_t sweeps() const noexcept { return sweeps_; }

 private:
  double last_residual_;
  std::size_t sweeps_;
};

}  // namespace fastpinv
