#include "rfacet/montecarlo.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <thread>
#include <vector>

#include "rfacet/errors.hpp"
#include "rfacet/rng.hpp"

namespace rfacet {

std::size_t run_trial(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree, Rule rule,
                      std::uint64_t seed, std::uint64_t index) {
  RandomSource rng(seed, index);
  if (rule == Rule::RandomFacet) return run_random_facet(inst, facets, tree, rng).pivot_count;
  std::vector<EdgeId> order(inst.m());
  std::iota(order.begin(), order.end(), EdgeId{0});
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  return run_random_facet_star(inst, facets, tree, Permutation::from_order(inst.m(), order)).pivot_count;
}

Estimate estimate_expected_pivots(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree, Rule rule,
                                  std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  if (trials == 0) throw Error(ErrorCode::ZeroTrials, "at least one trial is required");
  workers = std::max(1u, workers);
  std::vector<std::size_t> counts(trials, 0);
  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) counts[i] = run_trial(inst, facets, tree, rule, seed, i);
  };
  if (workers == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (std::uint64_t begin = 0; begin < trials; begin += chunk)
      threads.emplace_back(run_range, begin, std::min(trials, begin + chunk));
    for (auto& t : threads) t.join();
  }

  // Integer sums keep the reduction exact and order independent.
  unsigned long long sum = 0;
  unsigned long long sum_sq = 0;
  for (std::size_t c : counts) {
    sum += c;
    sum_sq += static_cast<unsigned long long>(c) * c;
  }
  Estimate est;
  est.trials = trials;
  est.seed = seed;
  const double n = static_cast<double>(trials);
  est.mean = static_cast<double>(sum) / n;
  if (trials > 1) {
    // (sum_sq - sum^2/n) / (n - 1), with the numerator formed in long double
    const long double centred = static_cast<long double>(sum_sq) -
                                static_cast<long double>(sum) * static_cast<long double>(sum) / n;
    const double variance = static_cast<double>(std::max<long double>(0, centred) / (n - 1));
    est.std_error = std::sqrt(variance / n);
  }
  return est;
}

std::string format_estimate(const Estimate& estimate) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "mean=%.6f stderr=%.6f trials=%llu seed=%llu", estimate.mean, estimate.std_error,
                static_cast<unsigned long long>(estimate.trials), static_cast<unsigned long long>(estimate.seed));
  return buf;
}

}  // namespace rfacet
