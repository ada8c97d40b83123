#include <cmath>

#include "doctest.h"
#include "sparsepip/exact.hpp"
#include "sparsepip/generators.hpp"
#include "sparsepip/lp.hpp"
#include "sparsepip/rng.hpp"

using namespace sparsepip;

TEST_CASE("empty instance") {
  const PipInstance empty(0, 0, {}, {}, {});
  CHECK(solve_exact(empty).value == 0.0);
}

TEST_CASE("2k-1 gap instances have integral optimum one") {
  for (int k = 2; k <= 6; ++k) {
    const ExactResult result = solve_exact(gen_gap_2k_minus_1(k, 1e-4));
    CHECK(result.value == doctest::Approx(1.0));
    CHECK(check_feasible(gen_gap_2k_minus_1(k, 1e-4), result.best));
  }
}

TEST_CASE("general-B gap instance optimum is floor(B)") {
  const ExactResult result = solve_exact(gen_gap_general_b(8, 2.0));
  CHECK(result.value == doctest::Approx(2.0));
}

TEST_CASE("l1 bad example optimum is one") {
  for (int n : {2, 4, 10}) CHECK(solve_exact(gen_l1_bad_example(n)).value == doctest::Approx(1.0));
}

TEST_CASE("exhaustive and branch-and-bound agree") {
  Rng rng(808);
  for (int round = 0; round < 10; ++round) {
    RandomInstanceConfig config;
    config.n = 10;
    config.m = 6;
    config.k = 3;
    config.sizes = SizeProfile::MixedBigSmall;
    config.weights = WeightProfile::Uniform;
    const PipInstance inst = gen_random(config, rng.next_u64());
    const ExactResult a = solve_exact(inst, ExactMode::Exhaustive);
    const ExactResult b = solve_exact(inst, ExactMode::BranchAndBound);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
    CHECK(check_feasible(inst, a.best));
    CHECK(check_feasible(inst, b.best));
    CHECK(value(inst, a.best) == doctest::Approx(a.value));
  }
}

TEST_CASE("general upper bounds through expansion") {
  // One item, u = 3, size 0.25 per copy: all three copies fit.
  const PipInstance inst(1, 1, {2.0}, {1.0}, {{0, 0, 0.25}}, {3});
  const ExactResult result = solve_exact(inst, ExactMode::Exhaustive);
  CHECK(result.value == doctest::Approx(6.0));
  CHECK(result.best.multiplicity[0] == 3);
  const ExactResult bnb = solve_exact(inst, ExactMode::BranchAndBound);
  CHECK(bnb.value == doctest::Approx(6.0));
}

TEST_CASE("value is invariant under item permutation") {
  RandomInstanceConfig config;
  config.n = 8;
  config.m = 5;
  config.k = 3;
  config.weights = WeightProfile::Uniform;
  const PipInstance inst = gen_random(config, 4711);
  const double forward = solve_exact(inst).value;

  std::vector<double> weights(static_cast<std::size_t>(config.n));
  std::vector<Triplet> entries;
  for (int i = 0; i < config.n; ++i) weights[static_cast<std::size_t>(config.n - 1 - i)] = inst.weight(i);
  for (const Triplet& e : inst.entries())
    entries.push_back({config.n - 1 - e.item, e.constraint, e.size});
  const PipInstance reversed(config.n, config.m, weights, inst.capacities(), entries);
  CHECK(solve_exact(reversed).value == doctest::Approx(forward));
}

TEST_CASE("size guards") {
  RandomInstanceConfig config;
  config.n = 30;
  config.m = 5;
  config.k = 2;
  const PipInstance inst = gen_random(config, 5);
  CHECK_THROWS_AS(solve_exact(inst, ExactMode::Exhaustive), InputError);
}

TEST_CASE("integrality gap") {
  // Diagonal instances have integral LP optima.
  const PipInstance diag(3, 3, {1, 1, 1}, {1, 1, 1}, {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}});
  CHECK(integrality_gap(diag, Relaxation::Natural) == doctest::Approx(1.0));

  const double epsilon = 1e-4;
  const PipInstance gap3 = gen_gap_2k_minus_1(3, epsilon);
  CHECK(integrality_gap(gap3, Relaxation::Strengthened) >= (1.0 - 3 * epsilon) * 5.0 - 1e-9);

  CHECK(integrality_gap(gen_l1_bad_example(10), Relaxation::Natural) >= 5.0 - 1e-9);

  // Zero optimum reports an infinite gap.
  const PipInstance zero_w(1, 1, {0.0}, {1.0}, {{0, 0, 1.0}});
  CHECK(std::isinf(integrality_gap(zero_w, Relaxation::Natural)) ==
        (solve_lp(build_natural_lp(zero_w)).objective > 0.0));
}
