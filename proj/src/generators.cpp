#include "sparsepip/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sparsepip/rng.hpp"

namespace sparsepip {

PipInstance gen_gap_2k_minus_1(int k, double epsilon) {
  if (k < 1) throw InputError("gap-2k-1 family requires k >= 1");
  const int n = 2 * k - 1;
  if (epsilon <= 0.0) epsilon = 1.0 / (10.0 * n * k);
  if (epsilon >= 1.0 / (static_cast<double>(n) * k))
    throw InputError("epsilon must be below 1/(n*k) = " + std::to_string(1.0 / (n * k)));

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(n) * k);
  for (int i = 0; i < n; ++i) {
    entries.push_back({i, i, 1.0});
    for (int d = 1; d < k; ++d) entries.push_back({i, (i + d) % n, epsilon});
  }
  return PipInstance(n, n, std::vector<double>(static_cast<std::size_t>(n), 1.0),
                     std::vector<double>(static_cast<std::size_t>(n), 1.0), entries);
}

PipInstance gen_l1_bad_example(int n) {
  if (n < 2) throw InputError("l1 bad example requires n >= 2");
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      entries.push_back({i, j, i == j ? 1.0 : 1.0 / n});
  return PipInstance(n, n, std::vector<double>(static_cast<std::size_t>(n), 1.0),
                     std::vector<double>(static_cast<std::size_t>(n), 1.0), entries);
}

namespace {

double binomial(int n, int r) {
  double result = 1.0;
  for (int i = 1; i <= r; ++i) result *= static_cast<double>(n - r + i) / i;
  return result;
}

}  // namespace

PipInstance gen_gap_general_b(int n, double B) {
  if (B < 1.0) throw InputError("general-B family requires B >= 1");
  const int t = static_cast<int>(std::floor(B));
  if (t + 1 > n) throw InputError("general-B family requires floor(B)+1 <= n");
  if (binomial(n, t + 1) > 1e6)
    throw InputError("general-B family would need " + std::to_string(binomial(n, t + 1)) +
                     " constraints; limit is 1e6");

  std::vector<Triplet> entries;
  std::vector<int> subset(static_cast<std::size_t>(t) + 1);
  std::iota(subset.begin(), subset.end(), 0);
  int m = 0;
  for (;;) {
    for (int i : subset) entries.push_back({i, m, 1.0});
    ++m;
    // Next (t+1)-subset in lexicographic order.
    int pos = t;
    while (pos >= 0 && subset[static_cast<std::size_t>(pos)] == n - (t + 1) + pos) --pos;
    if (pos < 0) break;
    ++subset[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q <= t; ++q)
      subset[static_cast<std::size_t>(q)] = subset[static_cast<std::size_t>(q - 1)] + 1;
  }
  return PipInstance(n, m, std::vector<double>(static_cast<std::size_t>(n), 1.0),
                     std::vector<double>(static_cast<std::size_t>(m), B), entries);
}

StrawmanExample gen_strawman_counterexample(int M) {
  if (M < 2) throw InputError("strawman example requires M >= 2");
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(M));
  entries.push_back({0, 0, static_cast<double>(M)});
  for (int i = 1; i < M; ++i) entries.push_back({i, 0, 1.0});
  StrawmanExample out{
      PipInstance(M, 1, std::vector<double>(static_cast<std::size_t>(M), 1.0),
                  {static_cast<double>(M)}, entries),
      FractionalSolution{std::vector<double>(static_cast<std::size_t>(M), 0.5),
                         static_cast<double>(M) / 2.0}};
  return out;
}

PipInstance gen_random(const RandomInstanceConfig& config, std::uint64_t seed) {
  if (config.n < 0 || config.m < 0) throw InputError("random instance dimensions must be >= 0");
  if (config.k > config.m) throw InputError("random instance requires k <= m");
  if (config.k < 0 || config.density < 0.0 || config.density > 1.0)
    throw InputError("random instance requires k >= 0 and density in [0, 1]");

  Rng rng(seed);
  std::vector<Triplet> entries;
  std::vector<int> pool(static_cast<std::size_t>(config.m));
  for (int i = 0; i < config.n; ++i) {
    std::iota(pool.begin(), pool.end(), 0);
    // Partial Fisher-Yates draws a uniform k-subset.
    for (int pick = 0; pick < config.k; ++pick) {
      const auto swap_at =
          pick + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(config.m - pick)));
      std::swap(pool[static_cast<std::size_t>(pick)], pool[static_cast<std::size_t>(swap_at)]);
    }
    std::vector<int> rows(pool.begin(), pool.begin() + config.k);
    std::sort(rows.begin(), rows.end());
    for (int j : rows) {
      const bool keep = config.density >= 1.0 || rng.bernoulli(config.density);
      // Draw the size either way so thinning does not shift the stream.
      double size;
      if (config.sizes == SizeProfile::Uniform) {
        size = 1.0 - rng.next_double();  // (0, 1]
      } else {
        const bool big = rng.bernoulli(0.5);
        const double u = 1.0 - rng.next_double();
        size = big ? 0.5 + 0.5 * u : 0.5 * u;
      }
      if (keep) entries.push_back({i, j, size});
    }
  }

  std::vector<double> weights(static_cast<std::size_t>(config.n), 1.0);
  if (config.weights == WeightProfile::Uniform)
    for (double& w : weights) w = 1.0 - rng.next_double();

  return PipInstance(config.n, config.m, std::move(weights),
                     std::vector<double>(static_cast<std::size_t>(config.m), 1.0), entries);
}

}  // namespace sparsepip
