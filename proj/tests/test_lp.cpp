#include <cmath>
#include <sstream>

#include "doctest.h"
#include "sparsepip/exact.hpp"
#include "sparsepip/generators.hpp"
#include "sparsepip/lp.hpp"
#include "sparsepip/rng.hpp"

using namespace sparsepip;

TEST_CASE("solve_lp trivial models") {
  LpModel model;
  model.num_vars = 1;
  model.objective = {1.0};
  model.lower = {0.0};
  model.upper = {1.0};
  model.rows.push_back({{{0, 1.0}}, 1.0});
  const FractionalSolution sol = solve_lp(model);
  CHECK(sol.objective == doctest::Approx(1.0));
  CHECK(sol.x[0] == doctest::Approx(1.0));
}

TEST_CASE("build_natural_lp") {
  const PipInstance one(1, 1, {1.0}, {1.0}, {{0, 0, 1.0}});
  const LpModel model = build_natural_lp(one);
  CHECK(model.num_vars == 1);
  CHECK(model.rows.size() == 1);
  CHECK(solve_lp(model).objective == doctest::Approx(1.0));

  // Zero weights: optimum 0.
  const PipInstance zero(2, 1, {0.0, 0.0}, {1.0}, {{0, 0, 0.5}, {1, 0, 0.5}});
  CHECK(solve_lp(build_natural_lp(zero)).objective == doctest::Approx(0.0));
}

TEST_CASE("l1 bad example LP value") {
  // Summing all n rows gives sum_i x_i (2n-1)/n <= n, so the LP optimum is
  // exactly n^2/(2n-1), attained by the symmetric point; in particular it is
  // at least n/2.
  for (int n : {4, 10}) {
    const double expected = static_cast<double>(n) * n / (2 * n - 1);
    const double objective = solve_lp(build_natural_lp(gen_l1_bad_example(n))).objective;
    CHECK(objective == doctest::Approx(expected).epsilon(1e-7));
    CHECK(objective >= n / 2.0 - 1e-9);
  }
}

TEST_CASE("big item index uses a strict threshold") {
  const PipInstance inst(3, 1, {1, 1, 1}, {1.0}, {{0, 0, 0.5}, {1, 0, 0.50001}, {2, 0, 0.4}});
  const BigItemIndex big = build_big_item_index(inst);
  CHECK(big.big_items[0] == std::vector<int>{1});  // exactly 1/2 is small
}

TEST_CASE("build_strengthened_lp adds big-item rows") {
  const PipInstance two_big(2, 1, {1.0, 1.0}, {1.0}, {{0, 0, 0.6}, {1, 0, 0.7}});
  const LpModel model = build_strengthened_lp(two_big);
  CHECK(model.rows.size() == 2);
  CHECK(solve_lp(model).objective == doctest::Approx(1.0));
  // Without the big-item row the LP packs more than one unit.
  CHECK(solve_lp(build_natural_lp(two_big)).objective > 1.0 + 1e-6);

  const PipInstance all_small(3, 2, {1, 1, 1}, {1.0, 1.0},
                              {{0, 0, 0.5}, {1, 0, 0.3}, {2, 1, 0.2}});
  CHECK(build_strengthened_lp(all_small).rows.size() == build_natural_lp(all_small).rows.size());

  const PipInstance bounded(1, 1, {1.0}, {1.0}, {{0, 0, 1.0}}, {2});
  CHECK_THROWS_AS(build_strengthened_lp(bounded), PreconditionError);
  const PipInstance unscaled(1, 1, {1.0}, {2.0}, {{0, 0, 1.0}});
  CHECK_THROWS_AS(build_strengthened_lp(unscaled), PreconditionError);
}

TEST_CASE("strengthened LP on the 2k-1 gap instance") {
  const double epsilon = 1e-3;
  const PipInstance inst = gen_gap_2k_minus_1(2, epsilon);
  const double objective = solve_lp(build_strengthened_lp(inst)).objective;
  CHECK(objective >= 3.0 * (1.0 - 2.0 * epsilon) - 1e-9);
}

TEST_CASE("general-B gap instance LP value") {
  const PipInstance inst = gen_gap_general_b(4, 2.0);
  CHECK(solve_lp(build_natural_lp(inst)).objective >= 2.0 - 1e-9);
}

TEST_CASE("maximize_linear_over_polytope") {
  const PipInstance inst(2, 1, {1.0, 1.0}, {1.0}, {{0, 0, 0.5}, {1, 0, 0.5}});
  const LpModel model = build_natural_lp(inst);

  const FractionalSolution same = maximize_linear_over_polytope(model, inst.weights());
  CHECK(same.objective == doctest::Approx(solve_lp(model).objective));

  const FractionalSolution zero = maximize_linear_over_polytope(model, {0.0, 0.0});
  CHECK(zero.objective == doctest::Approx(0.0));
  CHECK(lp_row_violation(model, zero.x) <= 1e-9);

  const FractionalSolution one_dir = maximize_linear_over_polytope(model, {1.0, 0.0});
  CHECK(one_dir.x[0] == doctest::Approx(1.0));  // min(1, 1/0.5)

  CHECK_THROWS_AS(maximize_linear_over_polytope(model, {1.0}), InputError);
}

TEST_CASE("solutions satisfy rows and bounds") {
  Rng rng(2024);
  for (int round = 0; round < 20; ++round) {
    RandomInstanceConfig config;
    config.n = 12;
    config.m = 7;
    config.k = 4;
    config.sizes = round % 2 == 0 ? SizeProfile::Uniform : SizeProfile::MixedBigSmall;
    config.weights = WeightProfile::Uniform;
    const PipInstance inst = gen_random(config, rng.next_u64());
    const LpModel model = build_natural_lp(inst);
    const FractionalSolution sol = solve_lp(model);
    CHECK(lp_row_violation(model, sol.x) <= 1e-9);
    for (int i = 0; i < model.num_vars; ++i) {
      CHECK(sol.x[static_cast<std::size_t>(i)] >= model.lower[static_cast<std::size_t>(i)]);
      CHECK(sol.x[static_cast<std::size_t>(i)] <= model.upper[static_cast<std::size_t>(i)]);
    }
  }
}

TEST_CASE("relaxation chain dominates the integral optimum") {
  Rng rng(515);
  for (int round = 0; round < 12; ++round) {
    RandomInstanceConfig config;
    config.n = 9;
    config.m = 6;
    config.k = 3;
    config.sizes = SizeProfile::MixedBigSmall;
    const PipInstance inst = gen_random(config, rng.next_u64());
    const double natural = solve_lp(build_natural_lp(inst)).objective;
    const double strengthened = solve_lp(build_strengthened_lp(inst)).objective;
    const double exact = solve_exact(inst, ExactMode::Exhaustive).value;
    CHECK(natural >= strengthened - 1e-9);
    CHECK(strengthened >= exact - 1e-9);
  }
}

TEST_CASE("strengthened gap meets (1 - k eps)(2k - 1)") {
  const double epsilon = 1e-4;
  for (int k = 2; k <= 6; ++k) {
    const PipInstance inst = gen_gap_2k_minus_1(k, epsilon);
    const double lp = solve_lp(build_strengthened_lp(inst)).objective;
    CHECK(lp >= (1.0 - k * epsilon) * (2 * k - 1) - 1e-9);
  }
}

TEST_CASE("upper bounds above one are honored") {
  const PipInstance inst(1, 1, {2.0}, {1.0}, {{0, 0, 0.25}}, {3});
  const FractionalSolution sol = solve_lp(build_natural_lp(inst));
  CHECK(sol.x[0] == doctest::Approx(3.0));  // bound binds before the capacity
  CHECK(sol.objective == doctest::Approx(6.0));
}

TEST_CASE("model validation") {
  LpModel bad;
  bad.num_vars = 1;
  bad.objective = {1.0};
  bad.lower = {0.0};
  bad.upper = {-1.0};
  CHECK_THROWS_AS(bad.validate(), InputError);

  LpModel negative_rhs;
  negative_rhs.num_vars = 1;
  negative_rhs.objective = {1.0};
  negative_rhs.lower = {0.0};
  negative_rhs.upper = {1.0};
  negative_rhs.rows.push_back({{{0, 1.0}}, -1.0});
  CHECK_THROWS_AS(negative_rhs.validate(), InputError);
}

TEST_CASE("infeasible fixed bounds are reported") {
  LpModel model;
  model.num_vars = 2;
  model.objective = {1.0, 1.0};
  model.lower = {1.0, 1.0};  // both forced in
  model.upper = {1.0, 1.0};
  model.rows.push_back({{{0, 0.7}, {1, 0.7}}, 1.0});
  CHECK_THROWS_AS(solve_lp(model), SolverError);
}

TEST_CASE("lp text dump") {
  const PipInstance inst(2, 1, {1.0, 2.0}, {1.0}, {{0, 0, 0.5}, {1, 0, 0.25}});
  std::ostringstream out;
  write_lp_text(build_natural_lp(inst), out);
  const std::string text = out.str();
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Bounds") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
  CHECK(text.find("0.5 x0") != std::string::npos);
}
