#pragma once

#include <stdexcept>
#include <string>

namespace qstancu {

// Violated precondition or parameter invariant.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A sampled function value was NaN or infinite.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The basis sweep hit k_max before the weight mass reached 1 - weight_mass_tol.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A declared Lipschitz/Hoelder class was contradicted by sampling.
class LipschitzViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qstancu
