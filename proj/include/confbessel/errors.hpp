#pragma once

#include <stdexcept>
#include <string>

namespace confbessel {

// Argument outside the domain of the operation (x <= 0, alpha outside (0, 1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Linear combination of series with different alpha or offset.
class AlignmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Order does not belong to the solution family requested.
class CaseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Gamma evaluated at a non-positive integer.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A black-box function returned a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace confbessel
