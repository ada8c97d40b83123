#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include "sparsepip/instance.hpp"

namespace sparsepip {

// A <= row in sparse form.
struct LpRow {
  std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
  double rhs = 0.0;
};

// max c.x  s.t.  rows, lower <= x <= upper. All rhs nonnegative, bounds
// finite and ordered, entries finite.
struct LpModel {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<LpRow> rows;

  void validate() const;  // throws InputError
};

// B(j): items with s_ij > 1/2 under unit capacities.
struct BigItemIndex {
  std::vector<std::vector<int>> big_items;  // per constraint, sorted
};

BigItemIndex build_big_item_index(const PipInstance& inst);

// Natural relaxation: x_i in [0, u_i], one capacity row per constraint.
// Expects a unit-capacity-normalized instance but works with any capacities.
LpModel build_natural_lp(const PipInstance& inst);

// Natural LP plus one row sum_{i in B(j)} x_i <= 1 per constraint with
// nonempty B(j). Requires unit capacities and unit upper bounds.
LpModel build_strengthened_lp(const PipInstance& inst);

// Abstract solver so an external LP engine can be swapped in; the bounded
// simplex below is the default and the one under test.
class LpSolver {
 public:
  virtual ~LpSolver() = default;
  virtual FractionalSolution solve(const LpModel& model) = 0;
};

// Primal simplex on the bounded-variable form. Starts from the slack basis
// (always feasible here since rhs >= 0), Dantzig pricing, and switches to
// Bland's rule after 5 * (rows + cols) degenerate pivots so it terminates.
class SimplexSolver final : public LpSolver {
 public:
  struct Options {
    double pivot_tol = 1e-10;   // entries smaller than this never pivot
    double feas_tol = 1e-9;     // residual tolerance on returned solutions
    double opt_tol = 1e-9;      // reduced-cost optimality tolerance
    int max_pivots = 0;         // 0: automatic limit from problem size
  };

  SimplexSolver() = default;
  explicit SimplexSolver(Options options) : options_(options) {}

  FractionalSolution solve(const LpModel& model) override;

  int last_pivot_count() const { return last_pivots_; }

 private:
  Options options_;
  int last_pivots_ = 0;
};

// Solve with the default simplex. Throws SolverError on iteration-limit or
// (defensively) unbounded models.
FractionalSolution solve_lp(const LpModel& model);

// Same polytope, different objective; used as the linear-maximization oracle
// by continuous greedy.
FractionalSolution maximize_linear_over_polytope(const LpModel& model,
                                                 const std::vector<double>& direction);

// Largest row violation of x against the model (0 when all rows hold).
double lp_row_violation(const LpModel& model, const std::vector<double>& x);

// Plain-text LP exchange format (objective, rows, bounds) for cross-checking
// against external solvers.
void write_lp_text(const LpModel& model, std::ostream& out);

}  // namespace sparsepip
