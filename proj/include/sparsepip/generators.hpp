#pragma once

#include <cstdint>

#include "sparsepip/instance.hpp"

namespace sparsepip {

// Cyclic instance with n = m = 2k-1: s_ii = 1 and s_ij = epsilon for the
// next k-1 constraints (mod n), unit weights and capacities. Its integral
// optimum is 1 while the strengthened LP reaches (1 - k*epsilon) * n, so the
// strengthened relaxation has gap at least 2k-1. epsilon <= 0 means the
// default 1 / (10 n k); values >= 1/(n k) are rejected because they break
// the optimum-one argument.
PipInstance gen_gap_2k_minus_1(int k, double epsilon = 0.0);

// Dense n x n instance with s_ii = 1, s_ij = 1/n off the diagonal, unit
// weights and capacities. Every column has l1 norm at most 2, yet the gap of
// the natural LP grows like n/2: l1-column bounds do not admit the
// column-sparsity guarantees.
PipInstance gen_l1_bad_example(int n);

// One all-ones constraint of capacity B per (t+1)-subset of items, t =
// floor(B), unit weights; column sparsity k = C(n-1, t). Integral optimum t,
// LP at least n/2. Subsets are enumerated in lexicographic order so
// constraint indices are reproducible. Guards: t+1 <= n, C(n, t+1) <= 1e6.
PipInstance gen_gap_general_b(int n, double B);

struct StrawmanExample {
  PipInstance instance;            // sizes (M, 1, ..., 1), capacity M
  FractionalSolution half_vector;  // x = 1/2 everywhere, LP-feasible
};

// The single-constraint instance M x_0 + x_1 + ... + x_{M-1} <= M on which
// discard-the-whole-constraint rounding almost never keeps item 0.
StrawmanExample gen_strawman_counterexample(int M);

enum class SizeProfile { Uniform, MixedBigSmall };
enum class WeightProfile { Unit, Uniform };

struct RandomInstanceConfig {
  int n = 0;
  int m = 0;
  int k = 1;                 // rows per item before density thinning
  double density = 1.0;      // keep each chosen row independently
  SizeProfile sizes = SizeProfile::Uniform;
  WeightProfile weights = WeightProfile::Unit;
};

// Unit-capacity random instance: each item gets a uniform k-subset of rows,
// thinned by density, with sizes in (0, 1]. Deterministic given the seed.
PipInstance gen_random(const RandomInstanceConfig& config, std::uint64_t seed);

}  // namespace sparsepip
