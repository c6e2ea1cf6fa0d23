#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quatpick {

/// Input outside the domain of an operation (zero inverse, node outside the ball, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A Neumann/Stein series that does not converge (|a||b| >= 1).
class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Elimination met a pivot that is zero to working precision.
class RankDeficiencyError : public std::runtime_error {
 public:
  RankDeficiencyError(const std::string& what, std::size_t pivot)
      : std::runtime_error(what), pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// Series whose constant coefficient vanishes has no star inverse.
class NonInvertibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Pointwise star inverse hit a zero of f or f^c.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Operation called on data that violates its stated precondition
/// (singular Pick matrix for Theta, nonsingular one for the determinate path, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Interpolation data for which the requested construction degenerates.
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// LFT parameter that fails the Schur-class admission test.
class InvalidParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace quatpick
