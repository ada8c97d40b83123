#include "sparsepip/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "sparsepip/lp.hpp"

namespace sparsepip {

namespace {

void validate_sampling_input(const PipInstance& inst, const std::vector<double>& x, double scale) {
  if (x.size() != static_cast<std::size_t>(inst.num_items()))
    throw InputError("x has " + std::to_string(x.size()) + " entries, instance has " +
                     std::to_string(inst.num_items()) + " items");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InputError("sampling scale must be positive");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || x[i] < 0.0)
      throw InputError("x must be finite and >= 0 (item " + std::to_string(i) + ")");
    if (scale * x[i] > 1.0 + 1e-12)
      throw InputError("scale * x exceeds 1 (item " + std::to_string(i) + ")");
  }
}

void sample_into(const std::vector<double>& x, double scale, Rng& rng, std::vector<int>& out) {
  out.clear();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double p = scale * x[i];
    // One draw per item regardless of p, so streams never shift.
    const double u = rng.next_double();
    if (u < p) out.push_back(static_cast<int>(i));
  }
}

std::vector<int> subset_members(const PipInstance& inst, const ItemSet& sampled) {
  if (sampled.multiplicity.size() != static_cast<std::size_t>(inst.num_items()))
    throw InputError("set size does not match instance");
  std::vector<int> members;
  for (int i = 0; i < inst.num_items(); ++i) {
    const int mult = sampled.multiplicity[static_cast<std::size_t>(i)];
    if (mult < 0 || mult > 1) throw InputError("alteration requires a 0/1 set");
    if (mult == 1) members.push_back(i);
  }
  return members;
}

ItemSet to_item_set(int n, const std::vector<int>& members) {
  ItemSet s = ItemSet::empty(n);
  for (int i : members) s.multiplicity[static_cast<std::size_t>(i)] = 1;
  return s;
}

// Per-trial scratch space; all per-constraint state is reset through the
// touched list so repeated trials stay O(|S| k).
class AlterationEngine {
 public:
  explicit AlterationEngine(const PipInstance& inst)
      : inst_(inst), sum_small_(static_cast<std::size_t>(inst.num_constraints()), 0.0),
        count_big_(static_cast<std::size_t>(inst.num_constraints()), 0),
        load_(static_cast<std::size_t>(inst.num_constraints()), 0.0),
        sizes_(static_cast<std::size_t>(inst.num_constraints())),
        prefix_(static_cast<std::size_t>(inst.num_constraints())),
        touched_flag_(static_cast<std::size_t>(inst.num_constraints()), 0) {}

  void run(AlterationRule rule, const std::vector<int>& sampled, std::vector<int>& survivors,
           std::vector<DeletionCause>* causes) {
    switch (rule) {
      case AlterationRule::Simple: run_simple(sampled, survivors, causes); return;
      case AlterationRule::Sorted: run_prefix(sampled, survivors, causes, false); return;
      case AlterationRule::PowersOfTwo: run_prefix(sampled, survivors, causes, true); return;
      case AlterationRule::Strawman: run_strawman(sampled, survivors, causes); return;
    }
    throw InputError("unknown alteration rule");
  }

 private:
  void touch(int j) {
    if (!touched_flag_[static_cast<std::size_t>(j)]) {
      touched_flag_[static_cast<std::size_t>(j)] = 1;
      touched_.push_back(j);
    }
  }

  void reset() {
    for (int j : touched_) {
      sum_small_[static_cast<std::size_t>(j)] = 0.0;
      count_big_[static_cast<std::size_t>(j)] = 0;
      load_[static_cast<std::size_t>(j)] = 0.0;
      sizes_[static_cast<std::size_t>(j)].clear();
      prefix_[static_cast<std::size_t>(j)].clear();
      touched_flag_[static_cast<std::size_t>(j)] = 0;
    }
    touched_.clear();
  }

  void run_simple(const std::vector<int>& sampled, std::vector<int>& survivors,
                  std::vector<DeletionCause>* causes) {
    survivors.clear();
    for (int i : sampled)
      for (const ColumnEntry& e : inst_.column(i)) {
        touch(e.constraint);
        if (e.size > 0.5)
          count_big_[static_cast<std::size_t>(e.constraint)] += 1;
        else
          sum_small_[static_cast<std::size_t>(e.constraint)] += e.size;
      }
    for (int i : sampled) {
      bool marked = false;
      for (const ColumnEntry& e : inst_.column(i)) {
        const int j = e.constraint;
        const int other_big = count_big_[static_cast<std::size_t>(j)] - (e.size > 0.5 ? 1 : 0);
        if (other_big >= 1) {
          marked = true;
          if (causes) causes->push_back({i, j, DeletionReason::BigNeighbor});
        }
        if (sum_small_[static_cast<std::size_t>(j)] > inst_.capacity(j)) {
          marked = true;
          if (causes) causes->push_back({i, j, DeletionReason::SmallOverflow});
        }
      }
      if (!marked) survivors.push_back(i);
    }
    reset();
  }

  void run_prefix(const std::vector<int>& sampled, std::vector<int>& survivors,
                  std::vector<DeletionCause>* causes, bool power_of_two_sizes) {
    survivors.clear();
    for (int i : sampled)
      for (const ColumnEntry& e : inst_.column(i)) {
        if (power_of_two_sizes && e.size > 1.0)
          throw PreconditionError("powers-of-two rule requires sizes <= 1; run unit-max-size "
                                  "normalization first");
        touch(e.constraint);
        sizes_[static_cast<std::size_t>(e.constraint)].push_back(
            power_of_two_sizes ? round_up_to_power_of_two(e.size) : e.size);
      }
    for (int j : touched_) {
      auto& sizes = sizes_[static_cast<std::size_t>(j)];
      std::sort(sizes.begin(), sizes.end(), std::greater<double>());
      auto& prefix = prefix_[static_cast<std::size_t>(j)];
      prefix.resize(sizes.size() + 1);
      prefix[0] = 0.0;
      for (std::size_t p = 0; p < sizes.size(); ++p) prefix[p + 1] = prefix[p] + sizes[p];
    }
    for (int i : sampled) {
      bool marked = false;
      for (const ColumnEntry& e : inst_.column(i)) {
        const int j = e.constraint;
        const double s = power_of_two_sizes ? round_up_to_power_of_two(e.size) : e.size;
        const auto& sizes = sizes_[static_cast<std::size_t>(j)];
        const auto at_least = static_cast<std::size_t>(
            std::upper_bound(sizes.begin(), sizes.end(), s, std::greater<double>()) -
            sizes.begin());
        if (prefix_[static_cast<std::size_t>(j)][at_least] > inst_.capacity(j)) {
          marked = true;
          if (causes) causes->push_back({i, j, DeletionReason::PrefixOverflow});
        }
      }
      if (!marked) survivors.push_back(i);
    }
    reset();
  }

  void run_strawman(const std::vector<int>& sampled, std::vector<int>& survivors,
                    std::vector<DeletionCause>* causes) {
    survivors.clear();
    for (int i : sampled)
      for (const ColumnEntry& e : inst_.column(i)) {
        touch(e.constraint);
        load_[static_cast<std::size_t>(e.constraint)] += e.size;
      }
    for (int i : sampled) {
      bool marked = false;
      for (const ColumnEntry& e : inst_.column(i)) {
        if (load_[static_cast<std::size_t>(e.constraint)] >
            inst_.capacity(e.constraint) + kFeasibilityTol) {
          marked = true;
          if (causes) causes->push_back({i, e.constraint, DeletionReason::ViolatedConstraint});
        }
      }
      if (!marked) survivors.push_back(i);
    }
    reset();
  }

  const PipInstance& inst_;
  std::vector<double> sum_small_;
  std::vector<int> count_big_;
  std::vector<double> load_;
  std::vector<std::vector<double>> sizes_;
  std::vector<std::vector<double>> prefix_;
  std::vector<int> touched_;
  std::vector<char> touched_flag_;
};

ItemSet run_alteration(const PipInstance& inst, AlterationRule rule, const ItemSet& sampled,
                       std::vector<DeletionCause>* causes) {
  const std::vector<int> members = subset_members(inst, sampled);
  AlterationEngine engine(inst);
  std::vector<int> survivors;
  engine.run(rule, members, survivors, causes);
  return to_item_set(inst.num_items(), survivors);
}

int effective_sparsity(const PipInstance& inst) { return std::max(1, column_sparsity(inst)); }

RoundingReport rounding_pass(const PipInstance& inst, const FractionalSolution& x, double alpha,
                             double scale, AlterationRule rule, std::uint64_t seed) {
  validate_sampling_input(inst, x.x, scale);
  RoundingReport report;
  report.seed = seed;
  report.alpha = alpha;
  report.scale = scale;
  Rng rng = Rng::split(seed, 0);
  std::vector<int> members;
  sample_into(x.x, scale, rng, members);
  report.sampled = to_item_set(inst.num_items(), members);

  AlterationEngine engine(inst);
  std::vector<int> survivors;
  engine.run(rule, members, survivors, &report.deletions);
  report.final_set = to_item_set(inst.num_items(), survivors);
  report.final_value = value(inst, report.final_set);
  return report;
}

}  // namespace

ItemSet sample_independent(const std::vector<double>& x, double scale, Rng& rng) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InputError("sampling scale must be positive");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || x[i] < 0.0)
      throw InputError("x must be finite and >= 0 (item " + std::to_string(i) + ")");
    if (scale * x[i] > 1.0 + 1e-12)
      throw InputError("scale * x exceeds 1 (item " + std::to_string(i) + ")");
  }
  std::vector<int> members;
  sample_into(x, scale, rng, members);
  return to_item_set(static_cast<int>(x.size()), members);
}

ItemSet sample_independent(const std::vector<double>& x, double scale, std::uint64_t seed) {
  Rng rng = Rng::split(seed, 0);
  return sample_independent(x, scale, rng);
}

ItemSet alter_simple(const PipInstance& inst, const ItemSet& sampled,
                     std::vector<DeletionCause>* causes) {
  return run_alteration(inst, AlterationRule::Simple, sampled, causes);
}

ItemSet alter_sorted(const PipInstance& inst, const ItemSet& sampled,
                     std::vector<DeletionCause>* causes) {
  return run_alteration(inst, AlterationRule::Sorted, sampled, causes);
}

ItemSet alter_powers_of_two(const PipInstance& inst, const ItemSet& sampled,
                            std::vector<DeletionCause>* causes) {
  return run_alteration(inst, AlterationRule::PowersOfTwo, sampled, causes);
}

ItemSet alter_strawman(const PipInstance& inst, const ItemSet& sampled,
                       std::vector<DeletionCause>* causes) {
  return run_alteration(inst, AlterationRule::Strawman, sampled, causes);
}

ItemSet apply_alteration(const PipInstance& inst, AlterationRule rule, const ItemSet& sampled,
                         std::vector<DeletionCause>* causes) {
  return run_alteration(inst, rule, sampled, causes);
}

double round_up_to_power_of_two(double size) {
  if (!(size > 0.0) || size > 1.0)
    throw InputError("power-of-two rounding requires size in (0, 1]");
  double t = 1.0;
  while (t * 0.5 >= size) t *= 0.5;
  return t;
}

ItemSet strawman_round(const PipInstance& inst, const FractionalSolution& x, std::uint64_t seed) {
  const double scale = 1.0 / (2.0 * effective_sparsity(inst));
  return rounding_pass(inst, x, 2.0, scale, AlterationRule::Strawman, seed).final_set;
}

RoundingReport round_simple(const PipInstance& inst, const FractionalSolution& x, double alpha,
                            std::uint64_t seed) {
  if (!(alpha > 0.0)) throw InputError("alpha must be positive");
  const double scale = 1.0 / (alpha * effective_sparsity(inst));
  return rounding_pass(inst, x, alpha, scale, AlterationRule::Simple, seed);
}

RoundingReport round_strong(const PipInstance& inst, const FractionalSolution& x, double alpha,
                            std::uint64_t seed) {
  if (!(alpha > 0.0)) throw InputError("alpha must be positive");
  const double scale = 1.0 / (alpha * effective_sparsity(inst));
  return rounding_pass(inst, x, alpha, scale, AlterationRule::Sorted, seed);
}

double large_b_alpha(double slack_b, int k) {
  if (slack_b < 1.0) throw PreconditionError("large-B rounding requires slack B >= 1");
  const double floor_b = std::floor(slack_b);
  return 4.0 * std::numbers::e * std::pow(floor_b * std::max(1, k), 1.0 / floor_b);
}

RoundingReport round_large_b(const PipInstance& inst, const FractionalSolution& x,
                             std::uint64_t seed) {
  const double b = slack(inst);
  if (b < 1.0 - 1e-12) throw PreconditionError("large-B rounding requires slack B >= 1");
  for (int i = 0; i < inst.num_items(); ++i)
    for (const ColumnEntry& e : inst.column(i))
      if (e.size > 1.0 + 1e-12)
        throw PreconditionError("large-B rounding requires unit-max-size normalization");
  const double alpha = large_b_alpha(b, effective_sparsity(inst));
  return rounding_pass(inst, x, alpha, 1.0 / alpha, AlterationRule::PowersOfTwo, seed);
}

ItemSet round_general_upper_bounds(const PipInstance& inst, const UnitRounder& rounder) {
  const FractionalSolution y = solve_lp(build_natural_lp(inst));

  ItemSet integer_part = ItemSet::empty(inst.num_items());
  std::vector<double> frac(static_cast<std::size_t>(inst.num_items()), 0.0);
  double frac_objective = 0.0;
  for (int i = 0; i < inst.num_items(); ++i) {
    const double yi = y.x[static_cast<std::size_t>(i)];
    int zi = static_cast<int>(std::floor(yi + 1e-9));
    zi = std::clamp(zi, 0, inst.upper_bound(i));
    integer_part.multiplicity[static_cast<std::size_t>(i)] = zi;
    frac[static_cast<std::size_t>(i)] = std::clamp(yi - zi, 0.0, 1.0);
    frac_objective += inst.weight(i) * frac[static_cast<std::size_t>(i)];
  }
  if (!check_feasible(inst, integer_part))
    throw SolverError("integer part of the LP solution is infeasible");

  PipInstance unit_instance(inst.num_items(), inst.num_constraints(), inst.weights(),
                            inst.capacities(), inst.entries());
  const ItemSet rounded = rounder(unit_instance, FractionalSolution{frac, frac_objective});
  if (!check_feasible(inst, rounded))
    throw SolverError("rounded fractional part is infeasible");

  return value(inst, integer_part) >= value(inst, rounded) ? integer_part : rounded;
}

double RetentionEstimate::pr_sampled(int i) const {
  return trials > 0 ? static_cast<double>(sampled[static_cast<std::size_t>(i)]) / trials : 0.0;
}

double RetentionEstimate::retention(int i) const {
  const long long n = sampled[static_cast<std::size_t>(i)];
  if (n <= 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(retained[static_cast<std::size_t>(i)]) / n;
}

double RetentionEstimate::retention_se(int i) const {
  const long long n = sampled[static_cast<std::size_t>(i)];
  if (n <= 0) return std::numeric_limits<double>::quiet_NaN();
  const double p = retention(i);
  return std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(n)));
}

namespace {

double wilson_center_margin(long long hits, long long n, double z, bool lower) {
  if (n <= 0) return std::numeric_limits<double>::quiet_NaN();
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double margin =
      z * std::sqrt(std::max(0.0, p * (1.0 - p) / nn + z2 / (4.0 * nn * nn))) / denom;
  return lower ? std::max(0.0, center - margin) : std::min(1.0, center + margin);
}

}  // namespace

double RetentionEstimate::wilson_lower(int i, double z) const {
  return wilson_center_margin(retained[static_cast<std::size_t>(i)],
                              sampled[static_cast<std::size_t>(i)], z, true);
}

double RetentionEstimate::wilson_upper(int i, double z) const {
  return wilson_center_margin(retained[static_cast<std::size_t>(i)],
                              sampled[static_cast<std::size_t>(i)], z, false);
}

namespace {

struct TrialAccumulator {
  std::vector<long long> sampled;
  std::vector<long long> retained;
  double value_sum = 0.0;
  double value_sq_sum = 0.0;
  long long violations = 0;

  explicit TrialAccumulator(int n)
      : sampled(static_cast<std::size_t>(n), 0), retained(static_cast<std::size_t>(n), 0) {}
};

void run_trial_range(const PipInstance& inst, const std::vector<double>& x, AlterationRule rule,
                     double scale, long long first, long long last, std::uint64_t seed,
                     TrialAccumulator& acc) {
  AlterationEngine engine(inst);
  std::vector<int> members;
  std::vector<int> survivors;
  std::vector<double> load(static_cast<std::size_t>(inst.num_constraints()), 0.0);
  std::vector<int> touched;

  for (long long t = first; t < last; ++t) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(t));
    sample_into(x, scale, rng, members);
    engine.run(rule, members, survivors, nullptr);

    for (int i : members) acc.sampled[static_cast<std::size_t>(i)] += 1;
    double v = 0.0;
    for (int i : survivors) {
      acc.retained[static_cast<std::size_t>(i)] += 1;
      v += inst.weight(i);
      for (const ColumnEntry& e : inst.column(i)) {
        if (load[static_cast<std::size_t>(e.constraint)] == 0.0) touched.push_back(e.constraint);
        load[static_cast<std::size_t>(e.constraint)] += e.size;
      }
    }
    bool violated = false;
    for (int j : touched) {
      if (load[static_cast<std::size_t>(j)] > inst.capacity(j) + kFeasibilityTol) violated = true;
      load[static_cast<std::size_t>(j)] = 0.0;
    }
    touched.clear();
    if (violated) acc.violations += 1;
    acc.value_sum += v;
    acc.value_sq_sum += v * v;
  }
}

}  // namespace

CampaignResult run_trials(const PipInstance& inst, const std::vector<double>& x,
                          AlterationRule rule, double scale, long long trials, std::uint64_t seed,
                          int threads) {
  if (trials < 1) throw InputError("trial count must be >= 1");
  validate_sampling_input(inst, x, scale);
  const int n = inst.num_items();
  threads = std::clamp<int>(threads, 1, 64);
  if (static_cast<long long>(threads) > trials) threads = static_cast<int>(trials);

  std::vector<TrialAccumulator> partial(static_cast<std::size_t>(threads), TrialAccumulator(n));
  if (threads == 1) {
    run_trial_range(inst, x, rule, scale, 0, trials, seed, partial[0]);
  } else {
    std::vector<std::thread> workers;
    const long long chunk = (trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const long long first = w * chunk;
      const long long last = std::min(trials, first + chunk);
      if (first >= last) break;
      workers.emplace_back(run_trial_range, std::cref(inst), std::cref(x), rule, scale, first,
                           last, seed, std::ref(partial[static_cast<std::size_t>(w)]));
    }
    for (auto& worker : workers) worker.join();
  }

  CampaignResult result;
  result.trials = trials;
  result.scale = scale;
  result.retention.trials = trials;
  result.retention.sampled.assign(static_cast<std::size_t>(n), 0);
  result.retention.retained.assign(static_cast<std::size_t>(n), 0);
  double value_sum = 0.0, value_sq_sum = 0.0;
  for (const TrialAccumulator& acc : partial) {
    for (int i = 0; i < n; ++i) {
      result.retention.sampled[static_cast<std::size_t>(i)] += acc.sampled[static_cast<std::size_t>(i)];
      result.retention.retained[static_cast<std::size_t>(i)] += acc.retained[static_cast<std::size_t>(i)];
    }
    result.feasibility_violations += acc.violations;
    value_sum += acc.value_sum;
    value_sq_sum += acc.value_sq_sum;
  }
  result.mean_value = value_sum / static_cast<double>(trials);
  if (trials > 1) {
    const double var = std::max(
        0.0, (value_sq_sum - value_sum * value_sum / static_cast<double>(trials)) /
                 static_cast<double>(trials - 1));
    result.value_std_error = std::sqrt(var / static_cast<double>(trials));
  }
  return result;
}

RetentionEstimate estimate_retention(const PipInstance& inst, const std::vector<double>& x,
                                     AlterationRule rule, double scale, long long trials,
                                     std::uint64_t seed, int threads) {
  return run_trials(inst, x, rule, scale, trials, seed, threads).retention;
}

double retention_bound_simple(double alpha) {
  return std::clamp(1.0 - 2.0 / alpha, 0.0, 1.0);
}

double retention_bound_sorted(double alpha, int k) {
  const double ak = alpha * std::max(1, k);
  const double per_constraint = (1.0 / ak) * (1.0 + std::cbrt(2.0 / ak));
  return std::pow(std::clamp(1.0 - per_constraint, 0.0, 1.0), std::max(1, k));
}

double retention_bound_large_b(double slack_b, int k) {
  const double floor_b = std::floor(slack_b);
  if (floor_b < 1.0) throw PreconditionError("large-B bound requires B >= 1");
  const int kk = std::max(1, k);
  return std::pow(std::clamp(1.0 - 1.0 / (kk * floor_b), 0.0, 1.0), kk);
}

bool alteration_is_monotone(const PipInstance& inst, AlterationRule rule, int max_n) {
  const int n = inst.num_items();
  if (n > max_n || n > 20)
    throw InputError("monotonicity enumeration is limited to n <= " +
                     std::to_string(std::min(max_n, 20)));

  const std::uint32_t full = n >= 32 ? 0xffffffffu : ((1u << n) - 1u);
  std::vector<std::uint32_t> survives(static_cast<std::size_t>(full) + 1, 0);
  AlterationEngine engine(inst);
  std::vector<int> members, survivors;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    members.clear();
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) members.push_back(i);
    engine.run(rule, members, survivors, nullptr);
    std::uint32_t out = 0;
    for (int i : survivors) out |= 1u << i;
    survives[mask] = out;
    if (mask == full) break;
  }

  for (std::uint32_t outer = 0; outer <= full; ++outer) {
    for (std::uint32_t sub = outer;; sub = (sub - 1) & outer) {
      if ((survives[outer] & sub & ~survives[sub]) != 0) return false;
      if (sub == 0) break;
    }
    if (outer == full) break;
  }
  return true;
}

}  // namespace sparsepip
