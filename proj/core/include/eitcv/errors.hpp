#pragma once

#include <stdexcept>
#include <string>

namespace eitcv {

// Invalid user input: bad labels, out-of-range parameters, inconsistent
// dimensions. The CLI maps this family to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Both variances of a correlated pair vanish, so a coefficient is 0/0.
class DegenerateInputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Numerical failure or violated tolerance. The CLI maps this family to
// exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive integration could not keep the step above the underflow floor.
class StiffnessError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Population leaked past a Fock-space cutoff.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Requested problem is larger than the brute-force oracle accepts.
class CapacityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace eitcv
