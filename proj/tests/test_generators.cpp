#include "doctest.h"
#include "sparsepip/exact.hpp"
#include "sparsepip/generators.hpp"
#include "sparsepip/lp.hpp"

using namespace sparsepip;

TEST_CASE("gap 2k-1 family") {
  const PipInstance k1 = gen_gap_2k_minus_1(1);
  CHECK(k1.num_items() == 1);
  CHECK(k1.num_constraints() == 1);
  CHECK(k1.column(0).size() == 1);
  CHECK(k1.column(0)[0].size == 1.0);

  const double epsilon = 1e-3;
  const PipInstance k2 = gen_gap_2k_minus_1(2, epsilon);
  REQUIRE(k2.num_items() == 3);
  REQUIRE(k2.num_constraints() == 3);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(k2.column(i).size() == 2);
    bool diag_seen = false, eps_seen = false;
    for (const ColumnEntry& e : k2.column(i)) {
      if (e.constraint == i) {
        CHECK(e.size == 1.0);
        diag_seen = true;
      } else {
        CHECK(e.constraint == (i + 1) % 3);
        CHECK(e.size == epsilon);
        eps_seen = true;
      }
    }
    CHECK(diag_seen);
    CHECK(eps_seen);
  }

  CHECK(column_sparsity(gen_gap_2k_minus_1(4)) == 4);
  CHECK_THROWS_AS(gen_gap_2k_minus_1(0), InputError);
  // epsilon >= 1/(nk) breaks the integral-optimum argument and is rejected.
  CHECK_THROWS_AS(gen_gap_2k_minus_1(2, 1.0 / 6.0), InputError);
  CHECK_NOTHROW(gen_gap_2k_minus_1(2, 1.0 / 6.0 - 1e-9));
}

TEST_CASE("l1 bad example") {
  const PipInstance n2 = gen_l1_bad_example(2);
  REQUIRE(n2.num_items() == 2);
  CHECK(n2.column(0)[0].size == 1.0);
  CHECK(n2.column(0)[1].size == 0.5);
  CHECK(n2.column(1)[0].size == 0.5);
  CHECK(n2.column(1)[1].size == 1.0);

  // Column l1 norms stay at most 2.
  const PipInstance n6 = gen_l1_bad_example(6);
  for (int i = 0; i < 6; ++i) {
    double norm = 0.0;
    for (const ColumnEntry& e : n6.column(i)) norm += e.size;
    CHECK(norm <= 2.0 + 1e-12);
  }

  // x = 1/2 is LP-feasible with value n/2.
  const PipInstance n4 = gen_l1_bad_example(4);
  const std::vector<double> half(4, 0.5);
  CHECK(max_constraint_violation(n4, half) <= 1e-12);
  CHECK(solve_exact(n4).value == doctest::Approx(1.0));
  CHECK_THROWS_AS(gen_l1_bad_example(1), InputError);
}

TEST_CASE("general-B gap family") {
  const PipInstance g = gen_gap_general_b(4, 2.0);
  CHECK(g.num_items() == 4);
  CHECK(g.num_constraints() == 4);  // C(4, 3)
  CHECK(column_sparsity(g) == 3);   // C(3, 2)
  for (int j = 0; j < g.num_constraints(); ++j) {
    CHECK(g.capacity(j) == 2.0);
    CHECK(g.row(j).size() == 3);
  }

  const PipInstance tiny = gen_gap_general_b(3, 1.0);
  CHECK(tiny.num_constraints() == 3);
  CHECK(solve_exact(tiny).value == doctest::Approx(1.0));

  CHECK(column_sparsity(gen_gap_general_b(8, 2.0)) == 21);  // C(7, 2)

  CHECK_THROWS_AS(gen_gap_general_b(2, 2.5), InputError);   // t+1 > n
  CHECK_THROWS_AS(gen_gap_general_b(40, 15.0), InputError); // blowup guard
}

TEST_CASE("strawman example") {
  const StrawmanExample ex = gen_strawman_counterexample(2);
  CHECK(ex.instance.num_items() == 2);
  CHECK(ex.instance.capacity(0) == 2.0);
  CHECK(ex.instance.column(0)[0].size == 2.0);
  CHECK(ex.instance.column(1)[0].size == 1.0);
  CHECK(max_constraint_violation(ex.instance, ex.half_vector.x) <= 1e-12);

  const NormalizationResult unit = normalize_unit_capacities(ex.instance);
  CHECK(unit.dropped_items.empty());
  CHECK(unit.instance.column(0)[0].size == doctest::Approx(1.0));
  CHECK(unit.instance.column(1)[0].size == doctest::Approx(0.5));

  CHECK_THROWS_AS(gen_strawman_counterexample(1), InputError);
}

TEST_CASE("random generator") {
  RandomInstanceConfig config;
  config.n = 12;
  config.m = 8;
  config.k = 3;

  SUBCASE("deterministic given the seed") {
    const PipInstance a = gen_random(config, 99);
    const PipInstance b = gen_random(config, 99);
    const auto ea = a.entries(), eb = b.entries();
    REQUIRE(ea.size() == eb.size());
    for (std::size_t t = 0; t < ea.size(); ++t) {
      CHECK(ea[t].item == eb[t].item);
      CHECK(ea[t].constraint == eb[t].constraint);
      CHECK(ea[t].size == eb[t].size);
    }
  }

  SUBCASE("density zero leaves every item free") {
    config.density = 0.0;
    CHECK(gen_random(config, 1).num_entries() == 0);
  }

  SUBCASE("shape and ranges") {
    config.sizes = SizeProfile::MixedBigSmall;
    config.weights = WeightProfile::Uniform;
    const PipInstance inst = gen_random(config, 7);
    CHECK(column_sparsity(inst) <= config.k);
    for (const Triplet& e : inst.entries()) {
      CHECK(e.size > 0.0);
      CHECK(e.size <= 1.0);
    }
    for (int i = 0; i < config.n; ++i) {
      CHECK(inst.weight(i) > 0.0);
      CHECK(inst.weight(i) <= 1.0);
    }
  }

  SUBCASE("k larger than m is rejected") {
    config.k = 9;
    CHECK_THROWS_AS(gen_random(config, 1), InputError);
  }

  SUBCASE("exact optimum never beats the LP across seeds") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const PipInstance inst = gen_random(config, seed);
      const double lp = solve_lp(build_natural_lp(inst)).objective;
      const double exact = solve_exact(inst, ExactMode::Exhaustive).value;
      CHECK(lp >= exact - 1e-6);
    }
  }
}
