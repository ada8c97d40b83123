#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sparsepip/instance.hpp"
#include "sparsepip/rng.hpp"

namespace sparsepip {

// Deterministic post-processing rules that delete items from a sampled set
// until every constraint holds.
enum class AlterationRule {
  Simple,        // big-neighbor or small-sum-overflow marking
  Sorted,        // delete i when items at least as large as i overfill j
  PowersOfTwo,   // Sorted on sizes rounded up to powers of two
  Strawman,      // discard every item of every violated constraint
};

enum class DeletionReason {
  BigNeighbor,         // another sampled item is big for the constraint
  SmallOverflow,       // sampled small items overfill the constraint
  PrefixOverflow,      // items at least as large as i overfill the constraint
  ViolatedConstraint,  // strawman: the constraint is violated outright
};

struct DeletionCause {
  int item;
  int constraint;
  DeletionReason reason;
};

struct RoundingReport {
  std::uint64_t seed = 0;
  double alpha = 0.0;
  double scale = 0.0;  // per-item sampling probability multiplier
  ItemSet sampled;     // S
  ItemSet final_set;   // S'
  std::vector<DeletionCause> deletions;
  double final_value = 0.0;
};

// Includes each item independently with probability scale * x_i. Throws
// InputError when scale * x_i > 1 or x_i < 0. Exactly one draw per item, so
// equal (inputs, rng state) give equal output.
ItemSet sample_independent(const std::vector<double>& x, double scale, Rng& rng);
ItemSet sample_independent(const std::vector<double>& x, double scale, std::uint64_t seed);

// Marks i when some other sampled item is big (s > 1/2) for a shared
// constraint, or when the sampled small items of a shared constraint sum
// beyond its capacity (the sum includes i itself). Expects unit capacities.
ItemSet alter_simple(const PipInstance& inst, const ItemSet& sampled,
                     std::vector<DeletionCause>* causes = nullptr);

// Marks i when {i' sampled : s_i'j >= s_ij} carries total size beyond the
// capacity of some j in N(i); ties count, as does i itself.
ItemSet alter_sorted(const PipInstance& inst, const ItemSet& sampled,
                     std::vector<DeletionCause>* causes = nullptr);

// Sorted rule on sizes rounded up to the next power of two. Requires sizes
// <= 1 (normalize_unit_max_size). The deletion threshold is the row
// capacity.
ItemSet alter_powers_of_two(const PipInstance& inst, const ItemSet& sampled,
                            std::vector<DeletionCause>* causes = nullptr);

// Discards all sampled items of every violated constraint.
ItemSet alter_strawman(const PipInstance& inst, const ItemSet& sampled,
                       std::vector<DeletionCause>* causes = nullptr);

ItemSet apply_alteration(const PipInstance& inst, AlterationRule rule, const ItemSet& sampled,
                         std::vector<DeletionCause>* causes = nullptr);

// Smallest power of two >= s for s in (0, 1].
double round_up_to_power_of_two(double size);

// Negative demonstration: sample at x/(2k), then drop all items of violated
// constraints.
ItemSet strawman_round(const PipInstance& inst, const FractionalSolution& x, std::uint64_t seed);

// Sample at x/(alpha k) and repair with the simple rule; alpha = 4 gives the
// 8k guarantee.
RoundingReport round_simple(const PipInstance& inst, const FractionalSolution& x,
                            double alpha = 4.0, std::uint64_t seed = 0);

// Sample at x/(alpha k) with x from the strengthened LP and repair with the
// sorted rule; alpha = 1 gives the (e + o(1))k guarantee.
RoundingReport round_strong(const PipInstance& inst, const FractionalSolution& x,
                            double alpha = 1.0, std::uint64_t seed = 0);

// Large-slack variant: sample at x/alpha with alpha = 4e (floor(B) k)^(1/floor(B))
// and repair with the powers-of-two rule. Requires a unit-max-size instance
// with B >= 1.
RoundingReport round_large_b(const PipInstance& inst, const FractionalSolution& x,
                             std::uint64_t seed = 0);

double large_b_alpha(double slack_b, int k);

// Rounds a unit-upper-bound fractional solution to an integral set.
using UnitRounder = std::function<ItemSet(const PipInstance&, const FractionalSolution&)>;

// General upper bounds: solve the natural LP over [0, u], keep the integer
// part z = floor(y), round the fractional part with the supplied rounder on
// the unit-bound instance, and return the better of the two.
ItemSet round_general_upper_bounds(const PipInstance& inst, const UnitRounder& rounder);

struct RetentionEstimate {
  long long trials = 0;
  std::vector<long long> sampled;   // trials with i in S
  std::vector<long long> retained;  // trials with i in S' among those

  double pr_sampled(int i) const;
  bool has_conditional(int i) const { return sampled[static_cast<std::size_t>(i)] > 0; }
  double retention(int i) const;      // Pr[i in S' | i in S]; NaN when never sampled
  double retention_se(int i) const;   // binomial standard error; NaN when never sampled
  double wilson_lower(int i, double z) const;
  double wilson_upper(int i, double z) const;
};

struct CampaignResult {
  long long trials = 0;
  double scale = 0.0;
  double mean_value = 0.0;  // mean of value(S') over trials
  double value_std_error = 0.0;
  long long feasibility_violations = 0;
  RetentionEstimate retention;
};

// Runs `trials` independent sample-then-alter trials; trial t draws its
// stream from (seed, t), so results do not depend on the thread count.
CampaignResult run_trials(const PipInstance& inst, const std::vector<double>& x,
                          AlterationRule rule, double scale, long long trials,
                          std::uint64_t seed, int threads = 1);

// Unbiased per-item frequency estimates of Pr[i in S] and Pr[i in S' | i in S].
RetentionEstimate estimate_retention(const PipInstance& inst, const std::vector<double>& x,
                                     AlterationRule rule, double scale, long long trials,
                                     std::uint64_t seed, int threads = 1);

// Survival monotonicity (the Corollary hypothesis): for all T1 within T2 and
// i in T1, survival in alter(T2) implies survival in alter(T1). Checked by
// enumerating every subset pair; n is capped by max_n.
bool alteration_is_monotone(const PipInstance& inst, AlterationRule rule, int max_n = 12);

// Per-item retention lower bounds proved for the three algorithms, as exact
// finite-k expressions (no asymptotics), clamped to [0, 1].
double retention_bound_simple(double alpha);            // 1 - 2/alpha
double retention_bound_sorted(double alpha, int k);     // (1 - (1/ak)(1 + (2/ak)^(1/3)))^k
double retention_bound_large_b(double slack_b, int k);  // (1 - 1/(k floor B))^k

}  // namespace sparsepip
