#include "sparsepip/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace sparsepip {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void LpModel::validate() const {
  if (num_vars < 0) throw InputError("lp: negative variable count");
  if (objective.size() != static_cast<std::size_t>(num_vars) ||
      lower.size() != static_cast<std::size_t>(num_vars) ||
      upper.size() != static_cast<std::size_t>(num_vars))
    throw InputError("lp: objective/bounds size mismatch");
  for (int v = 0; v < num_vars; ++v) {
    if (!std::isfinite(objective[v])) throw InputError("lp: non-finite objective at " + std::to_string(v));
    if (!std::isfinite(lower[v]) || !std::isfinite(upper[v]) || lower[v] > upper[v])
      throw InputError("lp: bad bounds at " + std::to_string(v));
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!std::isfinite(rows[r].rhs) || rows[r].rhs < 0.0)
      throw InputError("lp: rhs must be finite and >= 0 in row " + std::to_string(r));
    for (const auto& [v, a] : rows[r].coeffs) {
      if (v < 0 || v >= num_vars) throw InputError("lp: column out of range in row " + std::to_string(r));
      if (!std::isfinite(a)) throw InputError("lp: non-finite coefficient in row " + std::to_string(r));
    }
  }
}

BigItemIndex build_big_item_index(const PipInstance& inst) {
  BigItemIndex index;
  index.big_items.resize(static_cast<std::size_t>(inst.num_constraints()));
  for (int j = 0; j < inst.num_constraints(); ++j)
    for (const RowEntry& e : inst.row(j))
      if (e.size > 0.5) index.big_items[static_cast<std::size_t>(j)].push_back(e.item);
  return index;
}

LpModel build_natural_lp(const PipInstance& inst) {
  LpModel model;
  model.num_vars = inst.num_items();
  model.objective = inst.weights();
  model.lower.assign(static_cast<std::size_t>(model.num_vars), 0.0);
  model.upper.reserve(static_cast<std::size_t>(model.num_vars));
  for (int i = 0; i < inst.num_items(); ++i)
    model.upper.push_back(static_cast<double>(inst.upper_bound(i)));
  model.rows.reserve(static_cast<std::size_t>(inst.num_constraints()));
  for (int j = 0; j < inst.num_constraints(); ++j) {
    LpRow row;
    row.rhs = inst.capacity(j);
    row.coeffs.reserve(inst.row(j).size());
    for (const RowEntry& e : inst.row(j)) row.coeffs.emplace_back(e.item, e.size);
    model.rows.push_back(std::move(row));
  }
  return model;
}

LpModel build_strengthened_lp(const PipInstance& inst) {
  for (int i = 0; i < inst.num_items(); ++i)
    if (inst.upper_bound(i) != 1)
      throw PreconditionError("strengthened lp requires unit upper bounds (item " +
                              std::to_string(i) + ")");
  for (int j = 0; j < inst.num_constraints(); ++j)
    if (std::abs(inst.capacity(j) - 1.0) > 1e-12)
      throw PreconditionError("strengthened lp requires unit capacities (constraint " +
                              std::to_string(j) + ")");
  LpModel model = build_natural_lp(inst);
  const BigItemIndex big = build_big_item_index(inst);
  for (int j = 0; j < inst.num_constraints(); ++j) {
    const auto& items = big.big_items[static_cast<std::size_t>(j)];
    if (items.empty()) continue;
    LpRow row;
    row.rhs = 1.0;
    row.coeffs.reserve(items.size());
    for (int i : items) row.coeffs.emplace_back(i, 1.0);
    model.rows.push_back(std::move(row));
  }
  return model;
}

namespace {

enum class VarState : unsigned char { AtLower, AtUpper, Basic };

}  // namespace

FractionalSolution SimplexSolver::solve(const LpModel& model) {
  model.validate();
  last_pivots_ = 0;

  const int n = model.num_vars;
  const int m = static_cast<int>(model.rows.size());
  const int total = n + m;  // structural + one slack per row
  const int width = total;

  FractionalSolution result;
  result.x.assign(static_cast<std::size_t>(n), 0.0);
  if (n == 0) return result;

  // Dense tableau of [A | I]; row r holds the current representation of the
  // equality  a.x + slack_r = rhs_r  in terms of all variables.
  std::vector<double> tab(static_cast<std::size_t>(m) * width, 0.0);
  std::vector<double> lower(model.lower), upper(model.upper);
  lower.resize(static_cast<std::size_t>(total), 0.0);
  upper.resize(static_cast<std::size_t>(total), kInf);
  std::vector<double> cost(model.objective);
  cost.resize(static_cast<std::size_t>(total), 0.0);

  std::vector<int> basic(static_cast<std::size_t>(m));
  std::vector<VarState> state(static_cast<std::size_t>(total), VarState::AtLower);
  std::vector<double> val(static_cast<std::size_t>(total), 0.0);  // nonbasic values
  std::vector<double> basic_val(static_cast<std::size_t>(m), 0.0);

  for (int v = 0; v < n; ++v) val[v] = lower[v];
  for (int r = 0; r < m; ++r) {
    double activity = 0.0;
    for (const auto& [v, a] : model.rows[static_cast<std::size_t>(r)].coeffs) {
      tab[static_cast<std::size_t>(r) * width + v] += a;
      activity += a * val[v];
    }
    tab[static_cast<std::size_t>(r) * width + (n + r)] = 1.0;
    basic[r] = n + r;
    state[static_cast<std::size_t>(n + r)] = VarState::Basic;
    basic_val[r] = model.rows[static_cast<std::size_t>(r)].rhs - activity;
    // With a nonnegative matrix the lower-bound point minimizes every row, so
    // a negative starting slack certifies an infeasible model.
    if (basic_val[r] < -options_.feas_tol)
      throw SolverError("lp infeasible: row " + std::to_string(r) +
                        " violated at the variable lower bounds");
    if (basic_val[r] < 0.0) basic_val[r] = 0.0;
  }

  const int max_pivots =
      options_.max_pivots > 0 ? options_.max_pivots : std::max(2000, 200 * (m + n));
  const int degen_limit = 5 * (m + n);
  int degen_count = 0;
  bool bland = false;

  std::vector<double> price(static_cast<std::size_t>(total), 0.0);

  for (;;) {
    if (last_pivots_ >= max_pivots)
      throw SolverError("lp iteration limit exceeded (" + std::to_string(max_pivots) + " pivots)");

    // Reduced costs d = c - c_B^T tab.
    std::fill(price.begin(), price.end(), 0.0);
    for (int r = 0; r < m; ++r) {
      const double cb = cost[static_cast<std::size_t>(basic[r])];
      if (cb == 0.0) continue;
      const double* row = &tab[static_cast<std::size_t>(r) * width];
      for (int v = 0; v < total; ++v) price[v] += cb * row[v];
    }

    int entering = -1;
    double entering_score = options_.opt_tol;
    for (int v = 0; v < total; ++v) {
      if (state[v] == VarState::Basic) continue;
      const double d = cost[v] - price[v];
      double score = 0.0;
      if (state[v] == VarState::AtLower && d > options_.opt_tol) score = d;
      else if (state[v] == VarState::AtUpper && d < -options_.opt_tol) score = -d;
      else continue;
      if (bland) { entering = v; break; }
      if (score > entering_score) { entering_score = score; entering = v; }
    }
    if (entering < 0) break;  // optimal

    const double sigma = state[entering] == VarState::AtLower ? 1.0 : -1.0;

    // Ratio test: how far can the entering variable move before it or some
    // basic variable hits a bound.
    double best_t = upper[entering] - lower[entering];  // bound flip distance
    int leave_row = -1;
    bool leave_to_upper = false;
    for (int r = 0; r < m; ++r) {
      const double a = tab[static_cast<std::size_t>(r) * width + entering];
      if (std::abs(a) <= options_.pivot_tol) continue;
      const double rate = -sigma * a;  // d basic_val[r] / dt
      const int b = basic[r];
      double t_r;
      bool to_upper;
      if (rate < 0.0) {
        t_r = (basic_val[r] - lower[b]) / (-rate);
        to_upper = false;
      } else {
        if (upper[b] == kInf) continue;
        t_r = (upper[b] - basic_val[r]) / rate;
        to_upper = true;
      }
      if (t_r < 0.0) t_r = 0.0;
      bool better = t_r < best_t - 1e-12;
      if (!better && t_r < best_t + 1e-12 && leave_row >= 0) {
        // Tie: Bland mode takes the smallest variable index (termination),
        // otherwise prefer the larger pivot for stability.
        if (bland)
          better = b < basic[leave_row];
        else
          better = std::abs(a) > std::abs(tab[static_cast<std::size_t>(leave_row) * width + entering]);
      }
      if (better) { best_t = t_r; leave_row = r; leave_to_upper = to_upper; }
    }

    if (best_t == kInf)
      throw SolverError("lp unbounded (cannot occur for well-formed packing models)");

    if (best_t <= 1e-11) {
      if (++degen_count > degen_limit) bland = true;
    }

    // Move the current point.
    for (int r = 0; r < m; ++r) {
      const double a = tab[static_cast<std::size_t>(r) * width + entering];
      if (a != 0.0) basic_val[r] -= sigma * a * best_t;
    }

    if (leave_row < 0) {
      // Entering variable runs to its other bound; basis unchanged.
      state[entering] = sigma > 0.0 ? VarState::AtUpper : VarState::AtLower;
      val[entering] = sigma > 0.0 ? upper[entering] : lower[entering];
      ++last_pivots_;
      continue;
    }

    const int leaving = basic[leave_row];
    const double entering_value = val[entering] + sigma * best_t;
    state[leaving] = leave_to_upper ? VarState::AtUpper : VarState::AtLower;
    val[leaving] = leave_to_upper ? upper[leaving] : lower[leaving];
    basic[leave_row] = entering;
    state[entering] = VarState::Basic;
    basic_val[leave_row] = entering_value;

    // Gaussian elimination on the entering column.
    double* prow = &tab[static_cast<std::size_t>(leave_row) * width];
    const double pivot = prow[entering];
    const double inv = 1.0 / pivot;
    for (int v = 0; v < total; ++v) prow[v] *= inv;
    prow[entering] = 1.0;
    for (int r = 0; r < m; ++r) {
      if (r == leave_row) continue;
      double* row = &tab[static_cast<std::size_t>(r) * width];
      const double f = row[entering];
      if (f == 0.0) continue;
      for (int v = 0; v < total; ++v) row[v] -= f * prow[v];
      row[entering] = 0.0;
    }
    ++last_pivots_;
  }

  for (int v = 0; v < n; ++v)
    result.x[static_cast<std::size_t>(v)] = state[v] == VarState::Basic ? 0.0 : val[v];
  for (int r = 0; r < m; ++r)
    if (basic[r] < n) result.x[static_cast<std::size_t>(basic[r])] = basic_val[r];
  // Box bounds hold exactly; rows are checked below against feas_tol.
  for (int v = 0; v < n; ++v) {
    double& x = result.x[static_cast<std::size_t>(v)];
    x = std::clamp(x, model.lower[static_cast<std::size_t>(v)], model.upper[static_cast<std::size_t>(v)]);
  }

  const double violation = lp_row_violation(model, result.x);
  if (violation > options_.feas_tol)
    throw SolverError("lp solution violates a row by " + std::to_string(violation));

  result.objective = 0.0;
  for (int v = 0; v < n; ++v)
    result.objective += model.objective[static_cast<std::size_t>(v)] * result.x[static_cast<std::size_t>(v)];
  return result;
}

FractionalSolution solve_lp(const LpModel& model) {
  SimplexSolver solver;
  return solver.solve(model);
}

FractionalSolution maximize_linear_over_polytope(const LpModel& model,
                                                 const std::vector<double>& direction) {
  if (direction.size() != static_cast<std::size_t>(model.num_vars))
    throw InputError("direction has " + std::to_string(direction.size()) +
                     " entries, model has " + std::to_string(model.num_vars) + " variables");
  LpModel redirected = model;
  redirected.objective = direction;
  return solve_lp(redirected);
}

double lp_row_violation(const LpModel& model, const std::vector<double>& x) {
  double worst = 0.0;
  for (const LpRow& row : model.rows) {
    double activity = 0.0;
    for (const auto& [v, a] : row.coeffs) activity += a * x[static_cast<std::size_t>(v)];
    worst = std::max(worst, activity - row.rhs);
  }
  return worst;
}

void write_lp_text(const LpModel& model, std::ostream& out) {
  out << "Maximize\n obj:";
  bool first = true;
  for (int v = 0; v < model.num_vars; ++v) {
    const double c = model.objective[static_cast<std::size_t>(v)];
    if (c == 0.0) continue;
    out << (first ? " " : " + ") << c << " x" << v;
    first = false;
  }
  if (first) out << " 0 x0";
  out << "\nSubject To\n";
  for (std::size_t r = 0; r < model.rows.size(); ++r) {
    out << " r" << r << ":";
    bool rfirst = true;
    for (const auto& [v, a] : model.rows[r].coeffs) {
      out << (rfirst ? " " : " + ") << a << " x" << v;
      rfirst = false;
    }
    if (rfirst) out << " 0 x0";
    out << " <= " << model.rows[r].rhs << "\n";
  }
  out << "Bounds\n";
  for (int v = 0; v < model.num_vars; ++v)
    out << " " << model.lower[static_cast<std::size_t>(v)] << " <= x" << v << " <= "
        << model.upper[static_cast<std::size_t>(v)] << "\n";
  out << "End\n";
}

}  // namespace sparsepip
