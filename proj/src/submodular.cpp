#include "sparsepip/submodular.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace sparsepip {

namespace {

void require_ground_size(int n, int limit, const char* what) {
  if (n < 0 || n > limit)
    throw InputError(std::string(what) + " supports at most " + std::to_string(limit) + " items");
}

std::uint64_t item_set_mask(const ItemSet& s) {
  if (s.multiplicity.size() > 64) throw InputError("oracle sets are limited to 64 items");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < s.multiplicity.size(); ++i)
    if (s.multiplicity[i] > 0) mask |= std::uint64_t{1} << i;
  return mask;
}

void validate_point(const std::vector<double>& x, int n) {
  if (x.size() != static_cast<std::size_t>(n))
    throw InputError("point has " + std::to_string(x.size()) + " coordinates, oracle has " +
                     std::to_string(n));
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i]) || x[i] < -1e-12 || x[i] > 1.0 + 1e-12)
      throw InputError("coordinate out of [0, 1] at " + std::to_string(i));
}

std::uint64_t sample_mask(const std::vector<double>& x, double scale, Rng& rng) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (rng.next_double() < scale * x[i]) mask |= std::uint64_t{1} << i;
  return mask;
}

}  // namespace

double SubmodularOracle::value_of(const ItemSet& s) const {
  if (s.multiplicity.size() != static_cast<std::size_t>(ground_size()))
    throw InputError("set size does not match oracle ground set");
  return value(item_set_mask(s));
}

LinearOracle::LinearOracle(std::vector<double> weights) : weights_(std::move(weights)) {
  require_ground_size(static_cast<int>(weights_.size()), 64, "linear oracle");
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0)
      throw InputError("linear oracle weight must be finite and >= 0 (item " + std::to_string(i) +
                       ")");
}

double LinearOracle::value(std::uint64_t set) const {
  double total = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (set & (std::uint64_t{1} << i)) total += weights_[i];
  return total;
}

CoverageOracle::CoverageOracle(std::vector<double> element_weights,
                               const std::vector<std::vector<int>>& covers)
    : element_weights_(std::move(element_weights)) {
  require_ground_size(static_cast<int>(covers.size()), 64, "coverage oracle");
  if (element_weights_.size() > 64) throw InputError("coverage universe is limited to 64 elements");
  for (std::size_t e = 0; e < element_weights_.size(); ++e)
    if (!std::isfinite(element_weights_[e]) || element_weights_[e] < 0.0)
      throw InputError("coverage element weight must be finite and >= 0 (element " +
                       std::to_string(e) + ")");
  covers_.reserve(covers.size());
  for (std::size_t i = 0; i < covers.size(); ++i) {
    std::uint64_t mask = 0;
    for (int e : covers[i]) {
      if (e < 0 || e >= static_cast<int>(element_weights_.size()))
        throw InputError("coverage element index out of range (item " + std::to_string(i) + ")");
      mask |= std::uint64_t{1} << e;
    }
    covers_.push_back(mask);
  }
}

double CoverageOracle::value(std::uint64_t set) const {
  std::uint64_t covered = 0;
  for (std::size_t i = 0; i < covers_.size(); ++i)
    if (set & (std::uint64_t{1} << i)) covered |= covers_[i];
  double total = 0.0;
  while (covered) {
    const int e = std::countr_zero(covered);
    total += element_weights_[static_cast<std::size_t>(e)];
    covered &= covered - 1;
  }
  return total;
}

ConcaveCardinalityOracle::ConcaveCardinalityOracle(std::vector<double> g) : g_(std::move(g)) {
  if (g_.empty()) throw InputError("concave cardinality oracle needs g(0..n)");
  require_ground_size(static_cast<int>(g_.size()) - 1, 64, "concave cardinality oracle");
  if (std::abs(g_[0]) > 1e-12) throw InputError("concave cardinality oracle requires g(0) = 0");
  for (std::size_t t = 1; t < g_.size(); ++t)
    if (g_[t] < g_[t - 1] - 1e-12)
      throw InputError("concave cardinality table must be nondecreasing (index " +
                       std::to_string(t) + ")");
  for (std::size_t t = 2; t < g_.size(); ++t)
    if (g_[t] - g_[t - 1] > g_[t - 1] - g_[t - 2] + 1e-12)
      throw InputError("concave cardinality table must have nonincreasing increments (index " +
                       std::to_string(t) + ")");
}

double ConcaveCardinalityOracle::value(std::uint64_t set) const {
  return g_[static_cast<std::size_t>(std::popcount(set))];
}

bool is_monotone(const SubmodularOracle& f) {
  const int n = f.ground_size();
  require_ground_size(n, 16, "monotonicity check");
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    const double base = f.value(mask);
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) continue;
      if (f.value(mask | (std::uint64_t{1} << i)) < base - 1e-9) return false;
    }
  }
  return true;
}

bool is_submodular(const SubmodularOracle& f) {
  const int n = f.ground_size();
  require_ground_size(n, 16, "submodularity check");
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  // Local exchange condition: f(S+i) + f(S+j) >= f(S+i+j) + f(S).
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    const double base = f.value(mask);
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) continue;
      const double with_i = f.value(mask | (std::uint64_t{1} << i));
      for (int j = i + 1; j < n; ++j) {
        if (mask & (std::uint64_t{1} << j)) continue;
        const double with_j = f.value(mask | (std::uint64_t{1} << j));
        const double with_both = f.value(mask | (std::uint64_t{1} << i) | (std::uint64_t{1} << j));
        if (with_i + with_j < with_both + base - 1e-9) return false;
      }
    }
  }
  return true;
}

double multilinear_exact(const SubmodularOracle& f, const std::vector<double>& x) {
  const int n = f.ground_size();
  if (n > 25) throw InputError("exact extension is limited to n <= 25");
  validate_point(x, n);
  const std::uint64_t count = std::uint64_t{1} << n;
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double p = 1.0;
    for (int i = 0; i < n && p != 0.0; ++i)
      p *= (mask & (std::uint64_t{1} << i)) ? x[static_cast<std::size_t>(i)]
                                            : 1.0 - x[static_cast<std::size_t>(i)];
    if (p != 0.0) total += p * f.value(mask);
  }
  return total;
}

EstimateResult multilinear_estimate(const SubmodularOracle& f, const std::vector<double>& x,
                                    long long samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("sample count must be >= 1");
  validate_point(x, f.ground_size());
  double sum = 0.0, sum_sq = 0.0;
  for (long long t = 0; t < samples; ++t) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(t));
    const double v = f.value(sample_mask(x, 1.0, rng));
    sum += v;
    sum_sq += v * v;
  }
  EstimateResult out;
  out.mean = sum / static_cast<double>(samples);
  if (samples > 1) {
    const double var =
        std::max(0.0, (sum_sq - sum * sum / static_cast<double>(samples)) /
                          static_cast<double>(samples - 1));
    out.std_error = std::sqrt(var / static_cast<double>(samples));
  }
  return out;
}

namespace {

std::vector<double> build_value_table(const SubmodularOracle& f) {
  const int n = f.ground_size();
  std::vector<double> table(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) table[mask] = f.value(mask);
  return table;
}

double extension_from_table(const std::vector<double>& table, int n, const std::vector<double>& x) {
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    double p = 1.0;
    for (int i = 0; i < n && p != 0.0; ++i)
      p *= (mask & (std::uint64_t{1} << i)) ? x[static_cast<std::size_t>(i)]
                                            : 1.0 - x[static_cast<std::size_t>(i)];
    if (p != 0.0) total += p * table[mask];
  }
  return total;
}

// All marginals E[f(S + i) - f(S)], S ~ product(x), in one sweep. The
// leave-one-out probability products come from prefix/suffix arrays, so
// coordinates at 0 or 1 need no special casing.
std::vector<double> exact_marginals(const std::vector<double>& table, int n,
                                    const std::vector<double>& x) {
  std::vector<double> marginal(static_cast<std::size_t>(n), 0.0);
  std::vector<double> prefix(static_cast<std::size_t>(n) + 1);
  std::vector<double> suffix(static_cast<std::size_t>(n) + 1);
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    prefix[0] = 1.0;
    for (int i = 0; i < n; ++i) {
      const double v = (mask & (std::uint64_t{1} << i)) ? x[static_cast<std::size_t>(i)]
                                                        : 1.0 - x[static_cast<std::size_t>(i)];
      prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] * v;
    }
    suffix[static_cast<std::size_t>(n)] = 1.0;
    for (int i = n - 1; i >= 0; --i) {
      const double v = (mask & (std::uint64_t{1} << i)) ? x[static_cast<std::size_t>(i)]
                                                        : 1.0 - x[static_cast<std::size_t>(i)];
      suffix[static_cast<std::size_t>(i)] = suffix[static_cast<std::size_t>(i) + 1] * v;
    }
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) continue;
      const double loo = prefix[static_cast<std::size_t>(i)] * suffix[static_cast<std::size_t>(i) + 1];
      if (loo == 0.0) continue;
      marginal[static_cast<std::size_t>(i)] +=
          loo * (table[mask | (std::uint64_t{1} << i)] - table[mask]);
    }
  }
  for (int i = 0; i < n; ++i)
    marginal[static_cast<std::size_t>(i)] *= 1.0 - x[static_cast<std::size_t>(i)];
  return marginal;
}

}  // namespace

ContinuousGreedyResult continuous_greedy(const SubmodularOracle& f, const LpModel& polytope,
                                         const ContinuousGreedyOptions& options) {
  const int n = f.ground_size();
  if (polytope.num_vars != n)
    throw InputError("polytope has " + std::to_string(polytope.num_vars) +
                     " variables, oracle has " + std::to_string(n));
  const int steps = options.steps > 0 ? options.steps : std::max(100, 10 * n);
  const int samples = options.samples > 0 ? options.samples : 200;
  const bool exact = !options.force_sampling && n <= 20;

  ContinuousGreedyResult result;
  result.exact_mode = exact;
  result.solution.x.assign(static_cast<std::size_t>(n), 0.0);
  if (n == 0) return result;

  std::vector<double> table;
  if (exact) {
    table = build_value_table(f);
    result.extension_trajectory.push_back(extension_from_table(table, n, result.solution.x));
  }

  std::vector<double> direction(static_cast<std::size_t>(n), 0.0);
  for (int step = 0; step < steps; ++step) {
    if (exact) {
      direction = exact_marginals(table, n, result.solution.x);
    } else {
      std::fill(direction.begin(), direction.end(), 0.0);
      Rng rng = Rng::split(options.seed, static_cast<std::uint64_t>(step) + 1);
      for (int r = 0; r < samples; ++r) {
        const std::uint64_t mask = sample_mask(result.solution.x, 1.0, rng);
        const double base = f.value(mask);
        for (int i = 0; i < n; ++i) {
          const std::uint64_t bit = std::uint64_t{1} << i;
          if (mask & bit) continue;  // zero marginal term
          direction[static_cast<std::size_t>(i)] += f.value(mask | bit) - base;
        }
      }
      for (double& d : direction) d /= samples;
    }

    const FractionalSolution vertex = maximize_linear_over_polytope(polytope, direction);
    for (int i = 0; i < n; ++i) {
      double& xi = result.solution.x[static_cast<std::size_t>(i)];
      xi += vertex.x[static_cast<std::size_t>(i)] / steps;
      xi = std::clamp(xi, 0.0, 1.0);
    }
    if (exact)
      result.extension_trajectory.push_back(extension_from_table(table, n, result.solution.x));
  }

  result.solution.objective =
      exact ? result.extension_trajectory.back()
            : multilinear_estimate(f, result.solution.x, std::max(2000, 20 * samples),
                                   Rng::split(options.seed, 0).next_u64())
                  .mean;
  return result;
}

SubmodularMaxResult maximize_submodular(const SubmodularOracle& f, const PipInstance& inst,
                                        double alpha, int steps, int samples, std::uint64_t seed,
                                        bool include_big_item_rows) {
  if (f.ground_size() != inst.num_items())
    throw InputError("oracle ground set and instance item count differ");
  if (!(alpha > 0.0)) throw InputError("alpha must be positive");
  for (int i = 0; i < inst.num_items(); ++i)
    if (inst.upper_bound(i) != 1)
      throw PreconditionError("submodular maximization requires unit upper bounds");

  const LpModel polytope =
      include_big_item_rows ? build_strengthened_lp(inst) : build_natural_lp(inst);

  ContinuousGreedyOptions greedy_options;
  greedy_options.steps = steps;
  greedy_options.samples = samples;
  greedy_options.seed = Rng::split(seed, 1).next_u64();
  const ContinuousGreedyResult greedy = continuous_greedy(f, polytope, greedy_options);

  SubmodularMaxResult result;
  result.fractional = greedy.solution;
  result.seed = seed;
  result.alpha = alpha;
  const int k = std::max(1, column_sparsity(inst));
  result.scale = 1.0 / (alpha * k);

  Rng rng = Rng::split(seed, 2);
  result.sampled = sample_independent(greedy.solution.x, result.scale, rng);
  result.final_set = alter_sorted(inst, result.sampled, &result.deletions);
  result.sampled_value = f.value_of(result.sampled);
  result.final_value = f.value_of(result.final_set);
  return result;
}

SubmodularTrialStats run_submodular_trials(const SubmodularOracle& f, const PipInstance& inst,
                                           const std::vector<double>& x, double scale,
                                           long long trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("trial count must be >= 1");
  if (f.ground_size() != inst.num_items())
    throw InputError("oracle ground set and instance item count differ");
  const int n = inst.num_items();

  SubmodularTrialStats stats;
  stats.trials = trials;
  stats.retention.trials = trials;
  stats.retention.sampled.assign(static_cast<std::size_t>(n), 0);
  stats.retention.retained.assign(static_cast<std::size_t>(n), 0);

  double sum_sampled = 0.0, sum_final = 0.0, sum_final_sq = 0.0;
  for (long long t = 0; t < trials; ++t) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(t));
    const ItemSet sampled = sample_independent(x, scale, rng);
    const ItemSet final_set = alter_sorted(inst, sampled);
    for (int i = 0; i < n; ++i) {
      if (!sampled.contains(i)) continue;
      stats.retention.sampled[static_cast<std::size_t>(i)] += 1;
      if (final_set.contains(i)) stats.retention.retained[static_cast<std::size_t>(i)] += 1;
    }
    if (!check_feasible(inst, final_set)) stats.feasibility_violations += 1;
    const double fv = f.value_of(final_set);
    sum_sampled += f.value_of(sampled);
    sum_final += fv;
    sum_final_sq += fv * fv;
  }
  stats.mean_sampled_value = sum_sampled / static_cast<double>(trials);
  stats.mean_final_value = sum_final / static_cast<double>(trials);
  if (trials > 1) {
    const double var = std::max(
        0.0, (sum_final_sq - sum_final * sum_final / static_cast<double>(trials)) /
                 static_cast<double>(trials - 1));
    stats.final_value_std_error = std::sqrt(var / static_cast<double>(trials));
  }
  return stats;
}

namespace {

void enumerate_feasible(const SubmodularOracle& f, const PipInstance& inst, int item,
                        std::uint64_t mask, std::vector<double>& load, double& best) {
  if (item == inst.num_items()) {
    best = std::max(best, f.value(mask));
    return;
  }
  bool fits = true;
  for (const ColumnEntry& e : inst.column(item))
    if (load[static_cast<std::size_t>(e.constraint)] + e.size >
        inst.capacity(e.constraint) + kFeasibilityTol) {
      fits = false;
      break;
    }
  if (fits) {
    for (const ColumnEntry& e : inst.column(item)) load[static_cast<std::size_t>(e.constraint)] += e.size;
    enumerate_feasible(f, inst, item + 1, mask | (std::uint64_t{1} << item), load, best);
    for (const ColumnEntry& e : inst.column(item)) load[static_cast<std::size_t>(e.constraint)] -= e.size;
  }
  enumerate_feasible(f, inst, item + 1, mask, load, best);
}

}  // namespace

double exact_submodular_optimum(const SubmodularOracle& f, const PipInstance& inst) {
  if (f.ground_size() != inst.num_items())
    throw InputError("oracle ground set and instance item count differ");
  if (inst.num_items() > 20) throw InputError("exact submodular optimum is limited to n <= 20");
  for (int i = 0; i < inst.num_items(); ++i)
    if (inst.upper_bound(i) != 1)
      throw PreconditionError("exact submodular optimum requires unit upper bounds");
  std::vector<double> load(static_cast<std::size_t>(inst.num_constraints()), 0.0);
  double best = f.value(0);
  enumerate_feasible(f, inst, 0, 0, load, best);
  return best;
}

GoodSampleCheck check_good_s(const SubmodularOracle& f, const std::vector<double>& x, double p,
                             long long trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("trial count must be >= 1");
  if (p < 0.0 || p > 1.0) throw InputError("p must lie in [0, 1]");
  if (f.ground_size() > 20) throw InputError("good-sample check needs the exact extension (n <= 20)");
  validate_point(x, f.ground_size());

  GoodSampleCheck check;
  check.exact_extension = multilinear_exact(f, x);
  double sum = 0.0, sum_sq = 0.0;
  for (long long t = 0; t < trials; ++t) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(t));
    const double v = f.value(sample_mask(x, p, rng));
    sum += v;
    sum_sq += v * v;
  }
  check.mc_mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - sum * sum / static_cast<double>(trials)) /
                                         static_cast<double>(trials - 1));
    check.mc_std_error = std::sqrt(var / static_cast<double>(trials));
  }
  check.target = p * check.exact_extension - 3.0 * check.mc_std_error;
  check.pass = check.mc_mean >= check.target;
  return check;
}

AlterationFamily::AlterationFamily(int n) : n_(n) {
  require_ground_size(n, 8, "alteration family");
  q_.assign(std::size_t{1} << (2 * n), 0.0);
}

double AlterationFamily::q(std::uint32_t b, std::uint32_t a) const {
  return q_[(static_cast<std::size_t>(b) << n_) | a];
}

void AlterationFamily::set_q(std::uint32_t b, std::uint32_t a, double prob) {
  q_[(static_cast<std::size_t>(b) << n_) | a] = prob;
}

void AlterationFamily::add_q(std::uint32_t b, std::uint32_t a, double prob) {
  q_[(static_cast<std::size_t>(b) << n_) | a] += prob;
}

void AlterationFamily::validate() const {
  const std::uint32_t full = (1u << n_) - 1u;
  for (std::uint32_t b = 0; b <= full; ++b) {
    double total = 0.0;
    for (std::uint32_t a = 0; a <= full; ++a) {
      const double prob = q(b, a);
      if (prob < -1e-15) throw InputError("negative alteration probability");
      if ((a & ~b) != 0 && prob != 0.0)
        throw InputError("alteration assigns probability outside the sampled set");
      total += prob;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw InputError("alteration distribution for a set does not sum to one");
  }
}

double AlterationFamily::inclusion(std::uint32_t b, int i) const {
  if ((b & (1u << i)) == 0) return 0.0;
  double total = 0.0;
  for (std::uint32_t a = b;; a = (a - 1) & b) {
    if (a & (1u << i)) total += q(b, a);
    if (a == 0) break;
  }
  return total;
}

bool AlterationFamily::is_monotone() const {
  const std::uint32_t full = (1u << n_) - 1u;
  std::vector<double> inc(static_cast<std::size_t>(full + 1) * static_cast<std::size_t>(n_), 0.0);
  for (std::uint32_t b = 0; b <= full; ++b)
    for (int i = 0; i < n_; ++i)
      inc[static_cast<std::size_t>(b) * n_ + static_cast<std::size_t>(i)] = inclusion(b, i);
  for (std::uint32_t outer = 0; outer <= full; ++outer) {
    for (std::uint32_t sub = outer;; sub = (sub - 1) & outer) {
      for (int i = 0; i < n_; ++i)
        if (sub & (1u << i)) {
          const double small = inc[static_cast<std::size_t>(sub) * n_ + static_cast<std::size_t>(i)];
          const double large = inc[static_cast<std::size_t>(outer) * n_ + static_cast<std::size_t>(i)];
          if (small < large - 1e-12) return false;
        }
      if (sub == 0) break;
    }
  }
  return true;
}

AlterationFamily AlterationFamily::identity(int n) {
  AlterationFamily family(n);
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t b = 0; b <= full; ++b) family.set_q(b, b, 1.0);
  return family;
}

SubadditivityCheck check_subadditivity_theorem(const SubmodularOracle& f,
                                               const std::vector<double>& x,
                                               const AlterationFamily& family) {
  const int n = family.ground_size();
  if (f.ground_size() != n) throw InputError("oracle and alteration family sizes differ");
  validate_point(x, n);
  try {
    family.validate();
  } catch (const InputError& err) {
    throw PreconditionError(std::string("invalid alteration family: ") + err.what());
  }
  if (!family.is_monotone())
    throw PreconditionError("alteration family violates the monotonicity condition");

  const std::uint32_t full = (1u << n) - 1u;
  std::vector<double> p(static_cast<std::size_t>(full) + 1, 0.0);
  for (std::uint32_t b = 0; b <= full; ++b) {
    double prob = 1.0;
    for (int i = 0; i < n; ++i)
      prob *= (b & (1u << i)) ? x[static_cast<std::size_t>(i)] : 1.0 - x[static_cast<std::size_t>(i)];
    p[b] = prob;
  }

  SubadditivityCheck check;
  check.beta = 1.0;
  bool beta_defined = false;
  for (int i = 0; i < n; ++i) {
    double numerator = 0.0, denominator = 0.0;
    for (std::uint32_t b = 0; b <= full; ++b) {
      if ((b & (1u << i)) == 0) continue;
      denominator += p[b];
      numerator += p[b] * family.inclusion(b, i);
    }
    if (denominator > 1e-15) {
      const double ratio = numerator / denominator;
      check.beta = beta_defined ? std::min(check.beta, ratio) : ratio;
      beta_defined = true;
    }
  }

  for (std::uint32_t b = 0; b <= full; ++b) {
    if (p[b] == 0.0) continue;
    check.rhs += p[b] * f.value(b);
    for (std::uint32_t a = b;; a = (a - 1) & b) {
      const double prob = family.q(b, a);
      if (prob != 0.0) check.lhs += p[b] * prob * f.value(a);
      if (a == 0) break;
    }
  }
  check.pass = check.lhs >= check.beta * check.rhs - 1e-12;
  return check;
}

AlterationFamily random_monotone_family(int n, Rng& rng) {
  require_ground_size(n, 8, "alteration family");
  const int maps = 1 + static_cast<int>(rng.next_below(3));
  std::vector<double> lambda(static_cast<std::size_t>(maps));
  double lambda_total = 0.0;
  for (double& l : lambda) {
    l = rng.uniform(0.05, 1.0);
    lambda_total += l;
  }
  std::vector<std::vector<int>> thresholds(static_cast<std::size_t>(maps),
                                           std::vector<int>(static_cast<std::size_t>(n), 0));
  for (auto& per_item : thresholds)
    for (int& theta : per_item) theta = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n) + 2));

  AlterationFamily family(n);
  const std::uint32_t full = n > 0 ? (1u << n) - 1u : 0u;
  for (std::uint32_t b = 0; b <= full; ++b) {
    const int size = std::popcount(b);
    for (int t = 0; t < maps; ++t) {
      // Keep i when its threshold tolerates the current set size: shrink
      // maps of this shape are monotone by construction.
      std::uint32_t a = 0;
      for (int i = 0; i < n; ++i)
        if ((b & (1u << i)) && thresholds[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] >= size)
          a |= 1u << i;
      family.add_q(b, a, lambda[static_cast<std::size_t>(t)] / lambda_total);
    }
    if (b == full) break;
  }
  family.validate();
  if (!family.is_monotone())
    throw SolverError("internal: generated alteration family is not monotone");
  return family;
}

CorollaryRetentionCheck check_corollary_retention(const SubmodularOracle& f,
                                                  const PipInstance& inst, AlterationRule rule,
                                                  const std::vector<double>& x, double scale,
                                                  long long trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("trial count must be >= 1");
  if (f.ground_size() != inst.num_items())
    throw InputError("oracle ground set and instance item count differ");
  if (!alteration_is_monotone(inst, rule))
    throw PreconditionError("alteration rule fails the survival-monotonicity hypothesis");

  const int n = inst.num_items();
  std::vector<long long> sampled_count(static_cast<std::size_t>(n), 0);
  std::vector<long long> retained_count(static_cast<std::size_t>(n), 0);
  std::vector<double> f_sampled(static_cast<std::size_t>(trials));
  std::vector<double> f_final(static_cast<std::size_t>(trials));

  for (long long t = 0; t < trials; ++t) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(t));
    const ItemSet sampled = sample_independent(x, scale, rng);
    const ItemSet final_set = apply_alteration(inst, rule, sampled);
    for (int i = 0; i < n; ++i) {
      if (!sampled.contains(i)) continue;
      sampled_count[static_cast<std::size_t>(i)] += 1;
      if (final_set.contains(i)) retained_count[static_cast<std::size_t>(i)] += 1;
    }
    f_sampled[static_cast<std::size_t>(t)] = f.value_of(sampled);
    f_final[static_cast<std::size_t>(t)] = f.value_of(final_set);
  }

  CorollaryRetentionCheck check;
  check.beta_hat = 1.0;
  for (int i = 0; i < n; ++i)
    if (sampled_count[static_cast<std::size_t>(i)] > 0)
      check.beta_hat = std::min(check.beta_hat,
                                static_cast<double>(retained_count[static_cast<std::size_t>(i)]) /
                                    static_cast<double>(sampled_count[static_cast<std::size_t>(i)]));

  double slack_sum = 0.0, slack_sq_sum = 0.0, sampled_sum = 0.0, final_sum = 0.0;
  for (long long t = 0; t < trials; ++t) {
    const double d = f_final[static_cast<std::size_t>(t)] - check.beta_hat * f_sampled[static_cast<std::size_t>(t)];
    slack_sum += d;
    slack_sq_sum += d * d;
    sampled_sum += f_sampled[static_cast<std::size_t>(t)];
    final_sum += f_final[static_cast<std::size_t>(t)];
  }
  check.mean_f_sampled = sampled_sum / static_cast<double>(trials);
  check.mean_f_final = final_sum / static_cast<double>(trials);
  check.slack = slack_sum / static_cast<double>(trials);
  if (trials > 1) {
    const double var = std::max(
        0.0, (slack_sq_sum - slack_sum * slack_sum / static_cast<double>(trials)) /
                 static_cast<double>(trials - 1));
    check.slack_std_error = std::sqrt(var / static_cast<double>(trials));
  }
  check.pass = check.slack >= -3.0 * check.slack_std_error - 1e-12;
  return check;
}

}  // namespace sparsepip
