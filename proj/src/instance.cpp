#include "sparsepip/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sparsepip {

namespace {

std::string at_item(int i) { return " (item " + std::to_string(i) + ")"; }
std::string at_entry(int i, int j) {
  return " (item " + std::to_string(i) + ", constraint " + std::to_string(j) + ")";
}

}  // namespace

PipInstance::PipInstance(int n, int m, std::vector<double> weights, std::vector<double> capacities,
                         const std::vector<Triplet>& entries, std::vector<int> upper_bounds)
    : n_(n), m_(m), weights_(std::move(weights)), capacities_(std::move(capacities)),
      upper_bounds_(std::move(upper_bounds)) {
  if (n < 0 || m < 0) throw InputError("negative dimension");
  if (weights_.size() != static_cast<std::size_t>(n))
    throw InputError("weights has " + std::to_string(weights_.size()) + " entries, expected " +
                     std::to_string(n));
  if (capacities_.size() != static_cast<std::size_t>(m))
    throw InputError("capacities has " + std::to_string(capacities_.size()) +
                     " entries, expected " + std::to_string(m));
  if (upper_bounds_.empty()) upper_bounds_.assign(static_cast<std::size_t>(n), 1);
  if (upper_bounds_.size() != static_cast<std::size_t>(n))
    throw InputError("upper_bounds has " + std::to_string(upper_bounds_.size()) +
                     " entries, expected " + std::to_string(n));

  for (int i = 0; i < n; ++i) {
    const double w = weights_[static_cast<std::size_t>(i)];
    if (!std::isfinite(w) || w < 0.0) throw InputError("weight must be finite and >= 0" + at_item(i));
    if (upper_bounds_[static_cast<std::size_t>(i)] < 1)
      throw InputError("upper bound must be a positive integer" + at_item(i));
  }
  for (int j = 0; j < m; ++j) {
    const double c = capacities_[static_cast<std::size_t>(j)];
    if (!std::isfinite(c) || c <= 0.0)
      throw InputError("capacity must be finite and > 0 (constraint " + std::to_string(j) + ")");
  }

  columns_.resize(static_cast<std::size_t>(n));
  rows_.resize(static_cast<std::size_t>(m));
  for (const Triplet& e : entries) {
    if (e.item < 0 || e.item >= n) throw InputError("entry item index out of range" + at_entry(e.item, e.constraint));
    if (e.constraint < 0 || e.constraint >= m)
      throw InputError("entry constraint index out of range" + at_entry(e.item, e.constraint));
    if (!std::isfinite(e.size) || e.size <= 0.0)
      throw InputError("entry size must be finite and > 0" + at_entry(e.item, e.constraint));
    columns_[static_cast<std::size_t>(e.item)].push_back({e.constraint, e.size});
  }
  for (int i = 0; i < n; ++i) {
    auto& col = columns_[static_cast<std::size_t>(i)];
    std::sort(col.begin(), col.end(),
              [](const ColumnEntry& a, const ColumnEntry& b) { return a.constraint < b.constraint; });
    for (std::size_t t = 1; t < col.size(); ++t)
      if (col[t].constraint == col[t - 1].constraint)
        throw InputError("duplicate entry" + at_entry(i, col[t].constraint));
    for (const ColumnEntry& e : col) rows_[static_cast<std::size_t>(e.constraint)].push_back({i, e.size});
    num_entries_ += col.size();
  }
}

std::vector<Triplet> PipInstance::entries() const {
  std::vector<Triplet> out;
  out.reserve(num_entries_);
  for (int i = 0; i < n_; ++i)
    for (const ColumnEntry& e : column(i)) out.push_back({i, e.constraint, e.size});
  return out;
}

ItemSet ItemSet::of(int n, std::initializer_list<int> items) {
  ItemSet s = ItemSet::empty(n);
  for (int i : items) s.multiplicity[static_cast<std::size_t>(i)] += 1;
  return s;
}

std::vector<int> ItemSet::members() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < multiplicity.size(); ++i)
    if (multiplicity[i] > 0) out.push_back(static_cast<int>(i));
  return out;
}

int ItemSet::total_multiplicity() const {
  int total = 0;
  for (int v : multiplicity) total += v;
  return total;
}

int column_sparsity(const PipInstance& inst) {
  int k = 0;
  for (int i = 0; i < inst.num_items(); ++i)
    k = std::max(k, static_cast<int>(inst.column(i).size()));
  return k;
}

double slack(const PipInstance& inst) {
  if (inst.num_entries() == 0) throw InputError("slack is undefined for an instance with no entries");
  double b = std::numeric_limits<double>::infinity();
  for (int i = 0; i < inst.num_items(); ++i)
    for (const ColumnEntry& e : inst.column(i))
      b = std::min(b, inst.capacity(e.constraint) / e.size);
  return b;
}

NormalizationResult normalize_unit_capacities(const PipInstance& inst) {
  const int n = inst.num_items();
  const int m = inst.num_constraints();

  // First pass: scale and find items that can never fit.
  std::vector<bool> dropped(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i)
    for (const ColumnEntry& e : inst.column(i))
      if (e.size / inst.capacity(e.constraint) > 1.0) dropped[static_cast<std::size_t>(i)] = true;

  std::vector<Triplet> entries;
  entries.reserve(inst.num_entries());
  std::vector<double> weights = inst.weights();
  std::vector<int> dropped_items;
  for (int i = 0; i < n; ++i) {
    if (dropped[static_cast<std::size_t>(i)]) {
      dropped_items.push_back(i);
      weights[static_cast<std::size_t>(i)] = 0.0;
      continue;
    }
    for (const ColumnEntry& e : inst.column(i))
      entries.push_back({i, e.constraint, e.size / inst.capacity(e.constraint)});
  }

  std::vector<double> capacities(static_cast<std::size_t>(m), 1.0);
  PipInstance normalized(n, m, std::move(weights), std::move(capacities), entries,
                         inst.upper_bounds());
  return {std::move(normalized), std::move(dropped_items)};
}

PipInstance normalize_unit_max_size(const PipInstance& inst) {
  const int n = inst.num_items();
  const int m = inst.num_constraints();

  std::vector<double> row_max(static_cast<std::size_t>(m), 0.0);
  for (int j = 0; j < m; ++j)
    for (const RowEntry& e : inst.row(j)) row_max[static_cast<std::size_t>(j)] = std::max(row_max[static_cast<std::size_t>(j)], e.size);

  // Empty rows are vacuous; remove them and compact constraint indices.
  std::vector<int> new_index(static_cast<std::size_t>(m), -1);
  std::vector<double> capacities;
  for (int j = 0; j < m; ++j) {
    if (row_max[static_cast<std::size_t>(j)] <= 0.0) continue;
    new_index[static_cast<std::size_t>(j)] = static_cast<int>(capacities.size());
    capacities.push_back(inst.capacity(j) / row_max[static_cast<std::size_t>(j)]);
  }

  std::vector<Triplet> entries;
  entries.reserve(inst.num_entries());
  for (int i = 0; i < n; ++i)
    for (const ColumnEntry& e : inst.column(i))
      entries.push_back({i, new_index[static_cast<std::size_t>(e.constraint)],
                         e.size / row_max[static_cast<std::size_t>(e.constraint)]});

  const int kept_rows = static_cast<int>(capacities.size());
  return PipInstance(n, kept_rows, inst.weights(), std::move(capacities), entries,
                     inst.upper_bounds());
}

bool check_feasible(const PipInstance& inst, const ItemSet& sol) {
  if (sol.multiplicity.size() != static_cast<std::size_t>(inst.num_items()))
    throw InputError("solution has " + std::to_string(sol.multiplicity.size()) +
                     " items, instance has " + std::to_string(inst.num_items()));
  std::vector<double> load(static_cast<std::size_t>(inst.num_constraints()), 0.0);
  for (int i = 0; i < inst.num_items(); ++i) {
    const int mult = sol.multiplicity[static_cast<std::size_t>(i)];
    if (mult < 0 || mult > inst.upper_bound(i)) return false;
    if (mult == 0) continue;
    for (const ColumnEntry& e : inst.column(i)) load[static_cast<std::size_t>(e.constraint)] += e.size * mult;
  }
  for (int j = 0; j < inst.num_constraints(); ++j)
    if (load[static_cast<std::size_t>(j)] > inst.capacity(j) + kFeasibilityTol) return false;
  return true;
}

double value(const PipInstance& inst, const ItemSet& sol) {
  if (sol.multiplicity.size() != static_cast<std::size_t>(inst.num_items()))
    throw InputError("solution has " + std::to_string(sol.multiplicity.size()) +
                     " items, instance has " + std::to_string(inst.num_items()));
  double total = 0.0;
  for (int i = 0; i < inst.num_items(); ++i)
    total += inst.weight(i) * sol.multiplicity[static_cast<std::size_t>(i)];
  return total;
}

double max_constraint_violation(const PipInstance& inst, const std::vector<double>& x) {
  if (x.size() != static_cast<std::size_t>(inst.num_items()))
    throw InputError("point has " + std::to_string(x.size()) + " coordinates, instance has " +
                     std::to_string(inst.num_items()));
  double worst = 0.0;
  for (int j = 0; j < inst.num_constraints(); ++j) {
    double load = 0.0;
    for (const RowEntry& e : inst.row(j)) load += e.size * x[static_cast<std::size_t>(e.item)];
    worst = std::max(worst, load - inst.capacity(j));
  }
  return worst;
}

}  // namespace sparsepip
