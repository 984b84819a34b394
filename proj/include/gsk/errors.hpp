#pragma once

#include <stdexcept>
#include <string>

namespace gsk {

// shape problems: odd dimension, mismatched sizes
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// input does not satisfy a structural invariant (not symplectic, not positive, ...)
struct InvariantError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// parameter outside the admissible range of a formula
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// logarithm requested off the principal branch
struct BranchError : std::domain_error {
  using std::domain_error::domain_error;
};

// base net does not cover the requested target
struct CoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// SK recursion got worse from one level to the next
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// energy constraint cannot be met by any state
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// closed-form time or query count does not exist
struct NoFiniteBound : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace gsk
