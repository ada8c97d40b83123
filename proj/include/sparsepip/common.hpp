#pragma once

#include <stdexcept>
#include <string>

namespace sparsepip {

// Error categories, mapped to CLI exit codes (input 2, solver 3, precondition 4).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Absolute tolerance for constraint feasibility on unit-capacity data.
inline constexpr double kFeasibilityTol = 1e-9;

}  // namespace sparsepip
