#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "sparsepip/common.hpp"

namespace sparsepip {

// One nonzero of a column: item i participates in constraint j with size s.
struct ColumnEntry {
  int constraint;
  double size;
};

struct RowEntry {
  int item;
  double size;
};

struct Triplet {
  int item;
  int constraint;
  double size;
};

// Column-sparse packing instance: max w.x  s.t.  S x <= c, x integral in
// [0, u]. Stored column-major (the rounding algorithms iterate over N(i));
// the row view P(j) is built once at construction. Immutable after
// construction and safe to share across concurrent trial workers.
class PipInstance {
 public:
  PipInstance() = default;

  // Validates everything: dimensions, nonnegative weights, positive
  // capacities, strictly positive sizes, no duplicate (item, constraint)
  // pairs, positive integer upper bounds. Throws InputError with the
  // offending indices.
  PipInstance(int n, int m, std::vector<double> weights, std::vector<double> capacities,
              const std::vector<Triplet>& entries, std::vector<int> upper_bounds = {});

  int num_items() const { return n_; }
  int num_constraints() const { return m_; }

  double weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& weights() const { return weights_; }

  double capacity(int j) const { return capacities_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& capacities() const { return capacities_; }

  // N(i): constraints item i participates in, sorted by constraint index.
  const std::vector<ColumnEntry>& column(int i) const { return columns_[static_cast<std::size_t>(i)]; }
  // P(j): items participating in constraint j, sorted by item index.
  const std::vector<RowEntry>& row(int j) const { return rows_[static_cast<std::size_t>(j)]; }

  int upper_bound(int i) const { return upper_bounds_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& upper_bounds() const { return upper_bounds_; }

  std::size_t num_entries() const { return num_entries_; }

  // Flat (item, constraint, size) list ordered by (item, constraint).
  std::vector<Triplet> entries() const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<double> weights_;
  std::vector<double> capacities_;
  std::vector<std::vector<ColumnEntry>> columns_;
  std::vector<std::vector<RowEntry>> rows_;
  std::vector<int> upper_bounds_;
  std::size_t num_entries_ = 0;
};

// Integral solution: per-item multiplicity in {0, ..., u_i}; a plain subset
// when all upper bounds are one.
struct ItemSet {
  std::vector<int> multiplicity;

  static ItemSet empty(int n) { return ItemSet{std::vector<int>(static_cast<std::size_t>(n), 0)}; }
  static ItemSet of(int n, std::initializer_list<int> items);

  bool contains(int i) const { return multiplicity[static_cast<std::size_t>(i)] > 0; }
  std::vector<int> members() const;
  int total_multiplicity() const;
};

struct FractionalSolution {
  std::vector<double> x;
  double objective = 0.0;
};

struct NormalizationResult {
  PipInstance instance;
  // Items whose scaled size exceeded the unit capacity in some constraint.
  // They keep their index but lose their entries and weight, so no algorithm
  // can profit from selecting them.
  std::vector<int> dropped_items;
};

// k = max_i |N(i)|; 0 for an empty instance.
int column_sparsity(const PipInstance& inst);

// B = min over stored entries of c_j / s_ij. Throws InputError if the
// instance has no entries.
double slack(const PipInstance& inst);

// Scales every row to capacity one. An item whose scaled size exceeds one in
// some constraint can never be selected integrally; it is dropped (entries
// cleared, weight zeroed) and recorded. Idempotent.
NormalizationResult normalize_unit_capacities(const PipInstance& inst);

// Scales rows (sizes and capacity) so the largest size in each row is one;
// constraints with no entries are removed. The slack of the result equals
// min_j c_j. Idempotent.
PipInstance normalize_unit_max_size(const PipInstance& inst);

// True iff every constraint holds within kFeasibilityTol and every
// multiplicity lies in [0, u_i]. Throws InputError on dimension mismatch.
bool check_feasible(const PipInstance& inst, const ItemSet& sol);

// Sum of w_i * multiplicity_i. Throws InputError on dimension mismatch.
double value(const PipInstance& inst, const ItemSet& sol);

// Largest constraint violation of a fractional point (0 when feasible);
// ignores box bounds.
double max_constraint_violation(const PipInstance& inst, const std::vector<double>& x);

}  // namespace sparsepip
