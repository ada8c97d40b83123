#include "sparsepip/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sparsepip/lp.hpp"

namespace sparsepip {

namespace {

constexpr long long kNodeLimit = 20'000'000;

int total_upper_bound(const PipInstance& inst) {
  long long total = 0;
  for (int i = 0; i < inst.num_items(); ++i) total += inst.upper_bound(i);
  return total > 1'000'000 ? 1'000'000 : static_cast<int>(total);
}

// Items with u_i > 1 become u_i unit copies sharing the original column.
PipInstance expand_to_unit_bounds(const PipInstance& inst, std::vector<int>& owner) {
  std::vector<double> weights;
  std::vector<Triplet> entries;
  owner.clear();
  for (int i = 0; i < inst.num_items(); ++i) {
    for (int copy = 0; copy < inst.upper_bound(i); ++copy) {
      const int id = static_cast<int>(owner.size());
      owner.push_back(i);
      weights.push_back(inst.weight(i));
      for (const ColumnEntry& e : inst.column(i)) entries.push_back({id, e.constraint, e.size});
    }
  }
  return PipInstance(static_cast<int>(owner.size()), inst.num_constraints(), std::move(weights),
                     inst.capacities(), entries);
}

struct ExhaustiveSearch {
  const PipInstance& inst;
  std::vector<double> load;
  std::vector<int> chosen;
  std::vector<double> suffix_weight;
  std::vector<int> best;
  double best_value = 0.0;
  long long nodes = 0;

  explicit ExhaustiveSearch(const PipInstance& instance)
      : inst(instance), load(static_cast<std::size_t>(instance.num_constraints()), 0.0),
        chosen(static_cast<std::size_t>(instance.num_items()), 0) {
    suffix_weight.assign(static_cast<std::size_t>(instance.num_items()) + 1, 0.0);
    for (int i = instance.num_items() - 1; i >= 0; --i)
      suffix_weight[i] = suffix_weight[i + 1] + instance.weight(i);
    best = chosen;
  }

  void run(int item, double current) {
    ++nodes;
    if (nodes > kNodeLimit) throw InputError("exhaustive search node limit exceeded");
    if (item == inst.num_items()) {
      if (current > best_value) {
        best_value = current;
        best = chosen;
      }
      return;
    }
    if (current + suffix_weight[item] <= best_value) return;  // cannot strictly improve

    bool fits = true;
    for (const ColumnEntry& e : inst.column(item))
      if (load[static_cast<std::size_t>(e.constraint)] + e.size >
          inst.capacity(e.constraint) + kFeasibilityTol) {
        fits = false;
        break;
      }
    if (fits) {
      for (const ColumnEntry& e : inst.column(item)) load[static_cast<std::size_t>(e.constraint)] += e.size;
      chosen[static_cast<std::size_t>(item)] = 1;
      run(item + 1, current + inst.weight(item));
      chosen[static_cast<std::size_t>(item)] = 0;
      for (const ColumnEntry& e : inst.column(item)) load[static_cast<std::size_t>(e.constraint)] -= e.size;
    }
    run(item + 1, current);
  }
};

ExactResult solve_exhaustive(const PipInstance& inst) {
  std::vector<int> owner;
  const bool general_bounds =
      std::any_of(inst.upper_bounds().begin(), inst.upper_bounds().end(), [](int u) { return u > 1; });
  const PipInstance* target = &inst;
  PipInstance expanded;
  if (general_bounds) {
    expanded = expand_to_unit_bounds(inst, owner);
    target = &expanded;
  }

  ExhaustiveSearch search(*target);
  search.run(0, 0.0);

  ExactResult result;
  result.nodes = search.nodes;
  result.value = search.best_value;
  result.best = ItemSet::empty(inst.num_items());
  for (int i = 0; i < target->num_items(); ++i) {
    if (search.best[static_cast<std::size_t>(i)] == 0) continue;
    const int original = general_bounds ? owner[static_cast<std::size_t>(i)] : i;
    result.best.multiplicity[static_cast<std::size_t>(original)] += 1;
  }
  return result;
}

struct BranchAndBound {
  const PipInstance& inst;
  LpModel model;  // natural relaxation; bounds mutated along the search
  ItemSet best;
  double best_value = 0.0;
  long long nodes = 0;
  SimplexSolver solver;

  explicit BranchAndBound(const PipInstance& instance)
      : inst(instance), model(build_natural_lp(instance)), best(ItemSet::empty(instance.num_items())) {}

  // With a nonnegative matrix the point x = lower minimizes every row, so
  // this test is exact.
  bool lower_bounds_feasible() const {
    for (const LpRow& row : model.rows) {
      double activity = 0.0;
      for (const auto& [v, a] : row.coeffs) activity += a * model.lower[static_cast<std::size_t>(v)];
      if (activity > row.rhs + kFeasibilityTol) return false;
    }
    return true;
  }

  void consider_integral(const std::vector<double>& x) {
    ItemSet candidate = ItemSet::empty(inst.num_items());
    double candidate_value = 0.0;
    for (int i = 0; i < inst.num_items(); ++i) {
      candidate.multiplicity[static_cast<std::size_t>(i)] =
          static_cast<int>(std::llround(x[static_cast<std::size_t>(i)]));
      candidate_value += inst.weight(i) * candidate.multiplicity[static_cast<std::size_t>(i)];
    }
    if (candidate_value > best_value && check_feasible(inst, candidate)) {
      best_value = candidate_value;
      best = std::move(candidate);
    }
  }

  void search() {
    ++nodes;
    if (nodes > kNodeLimit) throw SolverError("branch-and-bound node limit exceeded");
    if (!lower_bounds_feasible()) return;

    const FractionalSolution relaxed = solver.solve(model);
    if (relaxed.objective <= best_value + 1e-9) return;

    int branch_var = -1;
    double most_fractional = 1e-7;
    for (int i = 0; i < model.num_vars; ++i) {
      const double xi = relaxed.x[static_cast<std::size_t>(i)];
      const double frac = std::abs(xi - std::round(xi));
      if (frac > most_fractional) {
        most_fractional = frac;
        branch_var = i;
      }
    }
    if (branch_var < 0) {
      consider_integral(relaxed.x);
      return;
    }

    const double xb = relaxed.x[static_cast<std::size_t>(branch_var)];
    const double saved_lo = model.lower[static_cast<std::size_t>(branch_var)];
    const double saved_hi = model.upper[static_cast<std::size_t>(branch_var)];

    // Round-up child first: packing incumbents tend to come from dense sets.
    model.lower[static_cast<std::size_t>(branch_var)] = std::ceil(xb);
    search();
    model.lower[static_cast<std::size_t>(branch_var)] = saved_lo;

    model.upper[static_cast<std::size_t>(branch_var)] = std::floor(xb);
    search();
    model.upper[static_cast<std::size_t>(branch_var)] = saved_hi;
  }
};

ExactResult solve_bnb(const PipInstance& inst) {
  BranchAndBound bnb(inst);
  bnb.search();
  ExactResult result;
  result.best = std::move(bnb.best);
  result.value = bnb.best_value;
  result.nodes = bnb.nodes;
  return result;
}

}  // namespace

ExactResult solve_exact(const PipInstance& inst, ExactMode mode) {
  const int size = total_upper_bound(inst);
  switch (mode) {
    case ExactMode::Exhaustive:
      if (size > 24) throw InputError("instance too large for exhaustive search (sum of bounds " +
                                      std::to_string(size) + " > 24)");
      return solve_exhaustive(inst);
    case ExactMode::BranchAndBound:
      if (inst.num_items() > 40)
        throw InputError("instance too large for branch-and-bound (n = " +
                         std::to_string(inst.num_items()) + " > 40)");
      return solve_bnb(inst);
    case ExactMode::Auto:
      if (size <= 20) return solve_exhaustive(inst);
      if (inst.num_items() <= 40) return solve_bnb(inst);
      throw InputError("instance too large for exact solve (n = " +
                       std::to_string(inst.num_items()) + ")");
  }
  throw InputError("unknown exact mode");
}

double integrality_gap(const PipInstance& inst, Relaxation relaxation) {
  const LpModel model =
      relaxation == Relaxation::Natural ? build_natural_lp(inst) : build_strengthened_lp(inst);
  const double lp_value = solve_lp(model).objective;
  const double exact_value = solve_exact(inst).value;
  if (exact_value <= 0.0)
    return lp_value > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  return lp_value / exact_value;
}

}  // namespace sparsepip
