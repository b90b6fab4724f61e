#include <cmath>

#include "doctest.h"
#include "rfacet/exact.hpp"
#include "rfacet/montecarlo.hpp"
#include "support.hpp"

using namespace rfacet;
using namespace rfacet::testing;

TEST_CASE("estimates are reproducible and independent of the worker split") {
  const auto& inst = errata();
  const auto all = EdgeSubset::full(inst.m());
  auto b = cube_tree(inst, "111");
  for (Rule rule : {Rule::RandomFacet, Rule::RandomFacetStar}) {
    auto a = estimate_expected_pivots(inst, all, b, rule, 5000, 99);
    auto again = estimate_expected_pivots(inst, all, b, rule, 5000, 99);
    CHECK(format_estimate(a) == format_estimate(again));
    CHECK(a.mean == again.mean);
    for (unsigned w : {2u, 3u, 7u}) {
      auto split = estimate_expected_pivots(inst, all, b, rule, 5000, 99, w);
      CHECK(split.mean == a.mean);
      CHECK(split.std_error == a.std_error);
    }
    CHECK(estimate_expected_pivots(inst, all, b, rule, 5000, 100).mean != a.mean);
  }
}

TEST_CASE("mean equals the average of run_trial") {
  const auto& inst = errata();
  const auto all = EdgeSubset::full(inst.m());
  auto b = cube_tree(inst, "001");
  std::size_t sum = 0;
  for (std::uint64_t i = 0; i < 200; ++i) sum += run_trial(inst, all, b, Rule::RandomFacetStar, 5, i);
  CHECK(estimate_expected_pivots(inst, all, b, Rule::RandomFacetStar, 200, 5).mean == doctest::Approx(sum / 200.0));
}

TEST_CASE("deterministic instance: mean 1, stderr 0") {
  auto inst = make("t", {{"e0", "v", "t", 0}, {"e1", "v", "t", 5}});
  auto b = TreePolicy::from_edges(inst, std::vector<EdgeId>{1});
  for (Rule rule : {Rule::RandomFacet, Rule::RandomFacetStar}) {
    auto e = estimate_expected_pivots(inst, EdgeSubset::full(2), b, rule, 1000, 3);
    CHECK(e.mean == 1.0);
    CHECK(e.std_error == 0.0);
    CHECK(e.trials == 1000);
  }
}

TEST_CASE("ZeroTrials") {
  const auto& inst = errata();
  CHECK(code_of([&] {
          estimate_expected_pivots(inst, EdgeSubset::full(inst.m()), cube_tree(inst, "001"), Rule::RandomFacet, 0,
                                   1);
        }) == ErrorCode::ZeroTrials);
}

TEST_CASE("10^5 pinned-seed trials agree with the exact values within 4 standard errors") {
  const auto& inst = errata();
  const auto all = EdgeSubset::full(inst.m());
  for (const char* bits : {"001", "111"}) {
    auto b = cube_tree(inst, bits);
    for (Rule rule : {Rule::RandomFacet, Rule::RandomFacetStar}) {
      const Rational exact =
          rule == Rule::RandomFacet ? expected_pivots_rf(inst, all, b) : expected_pivots_rf_star(inst, all, b);
      auto est = estimate_expected_pivots(inst, all, b, rule, 100000, 20261017, 2);
      CHECK(std::abs(est.mean - to_double(exact)) < 4 * est.std_error);
      CHECK(std::abs(est.mean - to_double(exact)) < 0.02);
    }
  }
}

TEST_CASE("format_estimate") {
  Estimate e{2.5, 0.125, 10, 7};
  CHECK(format_estimate(e) == "mean=2.500000 stderr=0.125000 trials=10 seed=7");
}
