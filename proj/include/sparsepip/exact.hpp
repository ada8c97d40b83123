#pragma once

#include "sparsepip/instance.hpp"

namespace sparsepip {

enum class ExactMode {
  Auto,            // exhaustive when small enough, else branch-and-bound
  Exhaustive,      // depth-first subset search, sum of upper bounds <= 24
  BranchAndBound,  // LP-bounded search, n <= 40
};

struct ExactResult {
  ItemSet best;
  double value = 0.0;
  long long nodes = 0;
  bool proven = true;
};

// Provably optimal integral solution. Upper bounds > 1 are handled by
// expanding items into unit copies in exhaustive mode and by integer bound
// branching in branch-and-bound. Throws InputError when the instance exceeds
// the mode's size guard.
ExactResult solve_exact(const PipInstance& inst, ExactMode mode = ExactMode::Auto);

enum class Relaxation { Natural, Strengthened };

// LP objective / exact integral optimum; +infinity when the exact optimum is
// zero and the LP value is positive, 1 when both are zero.
double integrality_gap(const PipInstance& inst, Relaxation relaxation);

}  // namespace sparsepip
