#pragma once

#include <stdexcept>
#include <string>

namespace masspack {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input data that is well-formed but violates a structural requirement
// (non-monotone gauge table, overlapping cover, shape mismatch, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation point too close to the unit circle for the quadrature grid.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace masspack
