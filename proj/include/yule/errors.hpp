#pragma once

#include <stdexcept>
#include <string>

namespace yule {

/// Precondition violated by the caller (order mismatch, bad index, bad size).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation close to a branch point of the closed form; caller should use
/// the recurrence path instead.
class BranchPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Non-finite value produced, or an iteration failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace yule
