#pragma once

#include <stdexcept>
#include <string>

namespace sonine {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A triangular solve step whose diagonal is numerically singular.
class IllConditionedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The pair handed to a solver does not satisfy the generalized Sonine condition.
class GscFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sonine
