#pragma once

#include <stdexcept>
#include <string>

namespace bbm {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A rejection sampler exhausted its retry budget.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The inputs are valid but fall outside the regime the estimators support
/// (torus balls wider than half a period, glued balls touching the seam, ...).
class UnsupportedRegime : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (preset strings, config files, CLI flags).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace bbm
