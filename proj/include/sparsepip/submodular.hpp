#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "sparsepip/instance.hpp"
#include "sparsepip/lp.hpp"
#include "sparsepip/rng.hpp"
#include "sparsepip/rounding.hpp"

namespace sparsepip {

// Monotone submodular set function with value-oracle access. Ground sets are
// limited to 64 items and passed as bit masks; every concrete family below
// validates its parameters on construction.
class SubmodularOracle {
 public:
  virtual ~SubmodularOracle() = default;
  virtual int ground_size() const = 0;
  virtual double value(std::uint64_t set) const = 0;

  double value_of(const ItemSet& s) const;
};

class LinearOracle final : public SubmodularOracle {
 public:
  explicit LinearOracle(std::vector<double> weights);
  int ground_size() const override { return static_cast<int>(weights_.size()); }
  double value(std::uint64_t set) const override;
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// f(S) = total weight of universe elements covered by some item of S.
class CoverageOracle final : public SubmodularOracle {
 public:
  CoverageOracle(std::vector<double> element_weights, const std::vector<std::vector<int>>& covers);
  int ground_size() const override { return static_cast<int>(covers_.size()); }
  double value(std::uint64_t set) const override;
  int universe_size() const { return static_cast<int>(element_weights_.size()); }

 private:
  std::vector<double> element_weights_;
  std::vector<std::uint64_t> covers_;  // per item, mask over universe elements
};

// f(S) = g(|S|) for a tabulated nondecreasing concave g with g(0) = 0.
class ConcaveCardinalityOracle final : public SubmodularOracle {
 public:
  explicit ConcaveCardinalityOracle(std::vector<double> g);
  int ground_size() const override { return static_cast<int>(g_.size()) - 1; }
  double value(std::uint64_t set) const override;

 private:
  std::vector<double> g_;
};

// Exhaustive structural checks (n <= 16).
bool is_monotone(const SubmodularOracle& f);
bool is_submodular(const SubmodularOracle& f);

// F(x) = E[f(S)] with each i in S independently with probability x_i,
// enumerated exactly over all 2^n sets (n <= 25).
double multilinear_exact(const SubmodularOracle& f, const std::vector<double>& x);

struct EstimateResult {
  double mean = 0.0;
  double std_error = 0.0;
};

// Monte Carlo proxy for F when exact enumeration is too large; unbiased and
// deterministic given the seed.
EstimateResult multilinear_estimate(const SubmodularOracle& f, const std::vector<double>& x,
                                    long long samples, std::uint64_t seed);

struct ContinuousGreedyOptions {
  int steps = 0;               // 0: max(100, 10 n)
  int samples = 200;           // marginal samples per step in sampled mode
  bool force_sampling = false; // exact marginals are used whenever n <= 20
  std::uint64_t seed = 0;
};

struct ContinuousGreedyResult {
  FractionalSolution solution;  // objective holds F(x): exact or estimated
  std::vector<double> extension_trajectory;  // exact mode: F after each step
  bool exact_mode = false;
};

// x(0) = 0; each step adds v/T where v maximizes the estimated marginal
// direction over the polytope. The output is an average of polytope vertices
// and therefore lies in the polytope.
ContinuousGreedyResult continuous_greedy(const SubmodularOracle& f, const LpModel& polytope,
                                         const ContinuousGreedyOptions& options);

struct SubmodularMaxResult {
  FractionalSolution fractional;
  ItemSet sampled;
  ItemSet final_set;
  std::vector<DeletionCause> deletions;
  double sampled_value = 0.0;  // f(S)
  double final_value = 0.0;    // f(S')
  double alpha = 0.0;
  double scale = 0.0;
  std::uint64_t seed = 0;
};

// Continuous greedy over the packing polytope followed by sample-at-
// x/(alpha k) and the sorted alteration. The polytope includes the big-item
// rows by default; pass include_big_item_rows = false for the plain
// relaxation.
SubmodularMaxResult maximize_submodular(const SubmodularOracle& f, const PipInstance& inst,
                                        double alpha = 1.0, int steps = 0, int samples = 0,
                                        std::uint64_t seed = 0, bool include_big_item_rows = true);

struct SubmodularTrialStats {
  long long trials = 0;
  double mean_sampled_value = 0.0;  // mean f(S)
  double mean_final_value = 0.0;    // mean f(S')
  double final_value_std_error = 0.0;
  long long feasibility_violations = 0;
  RetentionEstimate retention;
};

// Repeated sample-then-sorted-alteration trials against a fixed fractional
// point, scoring sets with the oracle.
SubmodularTrialStats run_submodular_trials(const SubmodularOracle& f, const PipInstance& inst,
                                           const std::vector<double>& x, double scale,
                                           long long trials, std::uint64_t seed);

// Best f value over all feasible subsets, by depth-first enumeration with
// feasibility pruning (n <= 20, unit upper bounds).
double exact_submodular_optimum(const SubmodularOracle& f, const PipInstance& inst);

struct GoodSampleCheck {
  bool pass = false;
  double mc_mean = 0.0;
  double mc_std_error = 0.0;
  double exact_extension = 0.0;  // F(x)
  double target = 0.0;           // p F(x) - 3 SE
};

// E[f(S)] >= p F(x) when S samples each i with probability p x_i; verified
// by Monte Carlo against the exact extension (n <= 20).
GoodSampleCheck check_good_s(const SubmodularOracle& f, const std::vector<double>& x, double p,
                             long long trials, std::uint64_t seed);

// Explicit randomized alteration: for every B a distribution q_B over the
// subsets of B. Dense storage, so ground sets are capped at 8 items.
class AlterationFamily {
 public:
  explicit AlterationFamily(int n);

  int ground_size() const { return n_; }
  double q(std::uint32_t b, std::uint32_t a) const;
  void set_q(std::uint32_t b, std::uint32_t a, double prob);
  void add_q(std::uint32_t b, std::uint32_t a, double prob);

  void validate() const;     // support and normalization; throws InputError
  bool is_monotone() const;  // retention sums never grow with B

  // Pr[i in A] when A ~ q_B.
  double inclusion(std::uint32_t b, int i) const;

  static AlterationFamily identity(int n);

 private:
  int n_;
  std::vector<double> q_;  // q_[b * 2^n + a]
};

struct SubadditivityCheck {
  double lhs = 0.0;   // E_B E_{A ~ q_B} f(A)
  double rhs = 0.0;   // E_B f(B)
  double beta = 0.0;  // tightest marginal-retention ratio of the family
  bool pass = false;
};

// Enumerates both sides of the generalized fractional-subadditivity
// inequality for the product distribution given by x and the family q.
// Throws PreconditionError when the family is not normalized or not
// monotone. beta is computed from the family, never supplied.
SubadditivityCheck check_subadditivity_theorem(const SubmodularOracle& f,
                                               const std::vector<double>& x,
                                               const AlterationFamily& family);

// Random mixture of per-item-threshold shrink maps; monotone by
// construction and re-verified by enumeration.
AlterationFamily random_monotone_family(int n, Rng& rng);

struct CorollaryRetentionCheck {
  bool pass = false;
  double mean_f_sampled = 0.0;
  double mean_f_final = 0.0;
  double beta_hat = 0.0;       // smallest observed per-item retention
  double slack = 0.0;          // mean of f(S') - beta_hat f(S)
  double slack_std_error = 0.0;
};

// Monte Carlo check of E[f(S')] >= beta E[f(S)] for a product-sampled S and
// a deterministic alteration rule; the rule must pass the exhaustive
// survival-monotonicity check first.
CorollaryRetentionCheck check_corollary_retention(const SubmodularOracle& f,
                                                  const PipInstance& inst, AlterationRule rule,
                                                  const std::vector<double>& x, double scale,
                                                  long long trials, std::uint64_t seed);

}  // namespace sparsepip
