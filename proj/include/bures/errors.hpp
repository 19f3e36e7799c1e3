#pragma once

#include <stdexcept>
#include <string>

namespace bures {

/// A state or parameter point lies outside the domain of an operation
/// (non-PSD state, singular matrix, point outside a prior's support).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The caller asked for something the operation cannot do as requested
/// (missing factorization, no sign change in a bracket, unknown family).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative numerical routine did not converge.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bures
