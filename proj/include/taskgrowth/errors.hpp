#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace taskgrowth {

// Bad scenario input. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
  ValidationError(std::string field, const std::string& reason)
      : std::runtime_error(field + ": " + reason), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

// Model or solver failure on otherwise well-formed input. Exit code 1.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Compute routed to a task that cannot use it (infinite automation cost).
class InfiniteCostWithCompute : public SolverError {
public:
  using SolverError::SolverError;
};

// Marginal product diverges (Cobb-Douglas at a zero input).
class UndefinedMarginal : public SolverError {
public:
  using SolverError::SolverError;
};

// No labor and no compute: nothing to allocate.
class DegenerateEconomy : public SolverError {
public:
  using SolverError::SolverError;
};

// Output is identically zero for every feasible allocation.
class InfeasibleSpec : public SolverError {
public:
  using SolverError::SolverError;
};

class NonPositiveOutput : public SolverError {
public:
  using SolverError::SolverError;
};

}  // namespace taskgrowth
