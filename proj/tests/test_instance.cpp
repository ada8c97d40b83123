#include <algorithm>
#include <vector>

#include "doctest.h"
#include "sparsepip/generators.hpp"
#include "sparsepip/instance.hpp"
#include "sparsepip/rng.hpp"

using namespace sparsepip;

namespace {

PipInstance diagonal(int n) {
  std::vector<Triplet> entries;
  for (int i = 0; i < n; ++i) entries.push_back({i, i, 1.0});
  return PipInstance(n, n, std::vector<double>(n, 1.0), std::vector<double>(n, 1.0), entries);
}

bool same_instance(const PipInstance& a, const PipInstance& b) {
  if (a.num_items() != b.num_items() || a.num_constraints() != b.num_constraints()) return false;
  if (a.weights() != b.weights() || a.capacities() != b.capacities()) return false;
  if (a.upper_bounds() != b.upper_bounds()) return false;
  const auto ea = a.entries(), eb = b.entries();
  if (ea.size() != eb.size()) return false;
  for (std::size_t t = 0; t < ea.size(); ++t)
    if (ea[t].item != eb[t].item || ea[t].constraint != eb[t].constraint ||
        ea[t].size != eb[t].size)
      return false;
  return true;
}

}  // namespace

TEST_CASE("construction validates the data") {
  CHECK_THROWS_AS(PipInstance(1, 1, {-1.0}, {1.0}, {{0, 0, 1.0}}), InputError);
  CHECK_THROWS_AS(PipInstance(1, 1, {1.0}, {0.0}, {{0, 0, 1.0}}), InputError);
  CHECK_THROWS_AS(PipInstance(1, 1, {1.0}, {1.0}, {{0, 0, 0.0}}), InputError);
  CHECK_THROWS_AS(PipInstance(1, 1, {1.0}, {1.0}, {{0, 1, 1.0}}), InputError);
  CHECK_THROWS_AS(PipInstance(1, 1, {1.0}, {1.0}, {{0, 0, 1.0}}, {0}), InputError);
  // Duplicate (i, j) entries are rejected, not summed.
  CHECK_THROWS_AS(PipInstance(1, 1, {1.0}, {1.0}, {{0, 0, 0.5}, {0, 0, 0.4}}), InputError);
}

TEST_CASE("column_sparsity") {
  CHECK(column_sparsity(diagonal(3)) == 1);
  CHECK(column_sparsity(gen_gap_2k_minus_1(2, 1e-3)) == 2);
  CHECK(column_sparsity(PipInstance(0, 0, {}, {}, {})) == 0);
  CHECK(column_sparsity(gen_gap_2k_minus_1(4)) == 4);
}

TEST_CASE("slack") {
  CHECK(slack(diagonal(2)) == doctest::Approx(1.0));
  const PipInstance two(2, 2, {1.0, 1.0}, {1.0, 2.0}, {{0, 0, 0.25}, {1, 1, 1.0}});
  CHECK(slack(two) == doctest::Approx(2.0));  // min(4, 2)
  CHECK(slack(gen_gap_general_b(4, 2.0)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(slack(PipInstance(1, 1, {1.0}, {1.0}, {})), InputError);
}

TEST_CASE("normalize_unit_capacities scales rows") {
  const PipInstance inst(1, 1, {1.0}, {2.0}, {{0, 0, 1.0}});
  const NormalizationResult result = normalize_unit_capacities(inst);
  CHECK(result.dropped_items.empty());
  CHECK(result.instance.capacity(0) == doctest::Approx(1.0));
  CHECK(result.instance.column(0)[0].size == doctest::Approx(0.5));
}

TEST_CASE("normalize_unit_capacities drops oversized items") {
  const PipInstance inst(2, 1, {3.0, 1.0}, {1.0}, {{0, 0, 1.5}, {1, 0, 0.5}});
  const NormalizationResult result = normalize_unit_capacities(inst);
  REQUIRE(result.dropped_items == std::vector<int>{0});
  CHECK(result.instance.column(0).empty());
  CHECK(result.instance.weight(0) == 0.0);  // cannot profit from a dropped item
  CHECK(result.instance.column(1).size() == 1);
}

TEST_CASE("normalizations are idempotent") {
  RandomInstanceConfig config;
  config.n = 6;
  config.m = 4;
  config.k = 2;
  PipInstance inst = gen_random(config, 99);
  const PipInstance unit = normalize_unit_capacities(inst).instance;
  CHECK(same_instance(unit, normalize_unit_capacities(unit).instance));
  const PipInstance scaled = normalize_unit_max_size(inst);
  CHECK(same_instance(scaled, normalize_unit_max_size(scaled)));
}

TEST_CASE("normalize_unit_max_size") {
  const PipInstance inst(2, 1, {1.0, 1.0}, {1.0}, {{0, 0, 0.5}, {1, 0, 0.25}});
  const PipInstance scaled = normalize_unit_max_size(inst);
  CHECK(scaled.capacity(0) == doctest::Approx(2.0));
  CHECK(scaled.column(0)[0].size == doctest::Approx(1.0));
  CHECK(scaled.column(1)[0].size == doctest::Approx(0.5));
  CHECK(slack(scaled) == doctest::Approx(2.0));

  // The general-B gap family is already max-size one per row.
  const PipInstance gap = gen_gap_general_b(4, 2.0);
  CHECK(same_instance(gap, normalize_unit_max_size(gap)));

  // Empty rows disappear.
  const PipInstance with_empty(1, 2, {1.0}, {1.0, 1.0}, {{0, 0, 0.5}});
  CHECK(normalize_unit_max_size(with_empty).num_constraints() == 1);
}

TEST_CASE("check_feasible and value") {
  const PipInstance inst(2, 1, {2.0, 5.0}, {1.0}, {{0, 0, 0.6}, {1, 0, 0.6}});
  CHECK(check_feasible(inst, ItemSet::empty(2)));
  CHECK(value(inst, ItemSet::empty(2)) == 0.0);
  CHECK_FALSE(check_feasible(inst, ItemSet::of(2, {0, 1})));  // 1.2 > 1
  CHECK(check_feasible(inst, ItemSet::of(2, {1})));
  CHECK(value(inst, ItemSet::of(2, {1})) == doctest::Approx(5.0));
  CHECK_THROWS_AS(check_feasible(inst, ItemSet::empty(3)), InputError);
  CHECK_THROWS_AS(value(inst, ItemSet::empty(3)), InputError);

  const PipInstance gap = gen_gap_2k_minus_1(2, 1e-3);
  CHECK(check_feasible(gap, ItemSet::of(3, {0})));
  CHECK_FALSE(check_feasible(gap, ItemSet::of(3, {0, 1})));

  // Multiplicities above the upper bound are infeasible, exactly.
  ItemSet overflow = ItemSet::empty(2);
  overflow.multiplicity[1] = 2;
  CHECK_FALSE(check_feasible(inst, overflow));

  const PipInstance unit_weights(3, 1, {1.0, 1.0, 1.0}, {10.0},
                                 {{0, 0, 1.0}, {1, 0, 1.0}, {2, 0, 1.0}});
  CHECK(value(unit_weights, ItemSet::of(3, {0, 1, 2})) == doctest::Approx(3.0));
}

TEST_CASE("unit-capacity normalization preserves the feasible region") {
  Rng rng(4242);
  for (int round = 0; round < 10; ++round) {
    RandomInstanceConfig config;
    config.n = 7;
    config.m = 4;
    config.k = 3;
    config.sizes = SizeProfile::MixedBigSmall;
    PipInstance inst = gen_random(config, rng.next_u64());
    // Random capacities so the scaling is nontrivial; some entries may then
    // exceed their capacity and force drops.
    std::vector<double> caps;
    for (int j = 0; j < config.m; ++j) caps.push_back(rng.uniform(0.5, 2.0));
    inst = PipInstance(config.n, config.m, inst.weights(), caps, inst.entries());

    const NormalizationResult result = normalize_unit_capacities(inst);
    std::uint32_t dropped_mask = 0;
    for (int i : result.dropped_items) dropped_mask |= 1u << i;

    for (std::uint32_t mask = 0; mask < (1u << config.n); ++mask) {
      if (mask & dropped_mask) continue;  // restricted to non-dropped items
      ItemSet s = ItemSet::empty(config.n);
      for (int i = 0; i < config.n; ++i)
        if (mask & (1u << i)) s.multiplicity[static_cast<std::size_t>(i)] = 1;
      CHECK(check_feasible(inst, s) == check_feasible(result.instance, s));
    }
  }
}

TEST_CASE("sparsity and slack are permutation invariant") {
  RandomInstanceConfig config;
  config.n = 8;
  config.m = 5;
  config.k = 3;
  const PipInstance inst = gen_random(config, 31);
  const int k = column_sparsity(inst);
  const double b = slack(inst);

  Rng rng(77);
  std::vector<int> item_perm(config.n), row_perm(config.m);
  for (int i = 0; i < config.n; ++i) item_perm[static_cast<std::size_t>(i)] = i;
  for (int j = 0; j < config.m; ++j) row_perm[static_cast<std::size_t>(j)] = j;
  for (int i = config.n - 1; i > 0; --i)
    std::swap(item_perm[static_cast<std::size_t>(i)],
              item_perm[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
  for (int j = config.m - 1; j > 0; --j)
    std::swap(row_perm[static_cast<std::size_t>(j)],
              row_perm[rng.next_below(static_cast<std::uint64_t>(j) + 1)]);

  std::vector<double> weights(static_cast<std::size_t>(config.n));
  std::vector<double> caps(static_cast<std::size_t>(config.m));
  for (int i = 0; i < config.n; ++i) weights[item_perm[static_cast<std::size_t>(i)]] = inst.weight(i);
  for (int j = 0; j < config.m; ++j) caps[row_perm[static_cast<std::size_t>(j)]] = inst.capacity(j);
  std::vector<Triplet> entries;
  for (const Triplet& e : inst.entries())
    entries.push_back({item_perm[static_cast<std::size_t>(e.item)],
                       row_perm[static_cast<std::size_t>(e.constraint)], e.size});
  const PipInstance shuffled(config.n, config.m, weights, caps, entries);

  CHECK(column_sparsity(shuffled) == k);
  CHECK(slack(shuffled) == doctest::Approx(b));
}
