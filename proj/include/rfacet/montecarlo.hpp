#pragma once

#include <cstdint>
#include <string>

#include "rfacet/exact.hpp"
#include "rfacet/facet.hpp"
#include "rfacet/graph.hpp"

namespace rfacet {

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(trials); 0 for one trial
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// Trial i draws from RandomSource(seed, i): Random-Facet consumes it directly,
// Random-Facet* uses it for a Fisher-Yates shuffle of all edges. Trials are
// split across `workers` threads; the result does not depend on the split.
// Throws ZeroTrials.
Estimate estimate_expected_pivots(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree, Rule rule,
                                  std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

// Pivot count of a single trial, exactly as estimate_expected_pivots runs it.
std::size_t run_trial(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree, Rule rule,
                      std::uint64_t seed, std::uint64_t index);

// "mean=<d> stderr=<d> trials=<n> seed=<n>", six decimals.
std::string format_estimate(const Estimate& estimate);

}  // namespace rfacet
