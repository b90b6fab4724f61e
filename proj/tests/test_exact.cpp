#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "rfacet/exact.hpp"
#include "support.hpp"

using namespace rfacet;
using namespace rfacet::testing;

TEST_CASE("f on the cube") {
  const auto& inst = errata();
  const auto all = EdgeSubset::full(inst.m());
  CHECK(expected_pivots_rf(inst, all, cube_tree(inst, "001")) == Rational(7, 3));
  CHECK(expected_pivots_rf(inst, all, cube_tree(inst, "111")) == Rational(11, 3));
  CHECK(expected_pivots_rf(inst, all, cube_tree(inst, "000")) == 0);
}

TEST_CASE("f* on the cube") {
  const auto& inst = errata();
  const auto all = EdgeSubset::full(inst.m());
  CHECK(expected_pivots_rf_star(inst, all, cube_tree(inst, "001")) == Rational(29, 12));
  CHECK(expected_pivots_rf_star(inst, all, cube_tree(inst, "111")) == Rational(43, 12));
}

TEST_CASE("f and f* differ in both directions") {
  const auto& inst = errata();
  const auto all = EdgeSubset::full(inst.m());
  auto b001 = cube_tree(inst, "001"), b111 = cube_tree(inst, "111");
  CHECK(expected_pivots_rf(inst, all, b001) < expected_pivots_rf_star(inst, all, b001));
  CHECK(expected_pivots_rf(inst, all, b111) > expected_pivots_rf_star(inst, all, b111));
}

TEST_CASE("F = B gives 0 for both engines") {
  const auto& inst = errata();
  for (std::uint32_t i = 0; i < 8; ++i) {
    auto b = CubeEncoding::of(inst).decode(inst, i);
    CHECK(expected_pivots_rf(inst, b.as_subset(inst.m()), b) == 0);
    CHECK(expected_pivots_rf_star(inst, b.as_subset(inst.m()), b) == 0);
  }
}

TEST_CASE("f on every start vertex equals the brute-force branch enumeration") {
  const auto& inst = errata();
  const auto all = EdgeSubset::full(inst.m());
  for (std::uint32_t i = 0; i < 8; ++i) {
    auto b = CubeEncoding::of(inst).decode(inst, i);
    CHECK(expected_pivots_rf(inst, all, b) == rf_brute_force(inst, all, b));
  }
}

TEST_CASE("f* enumeration bound") {
  auto inst = random_instance(4, 3, 10, 5);  // 12 edges > 10
  auto all = EdgeSubset::full(inst.m());
  auto b = optimal_tree(inst, all);
  CHECK(code_of([&] { expected_pivots_rf_star(inst, all, b); }) == ErrorCode::EnumerationBoundExceeded);
  try {
    expected_pivots_rf_star(inst, all, b);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("Monte Carlo") != std::string::npos);
  }
  ExactOptions small;
  small.max_permutation_facets = 3;
  const auto& cube = errata();
  CHECK(code_of([&] {
          expected_pivots_rf_star(cube, EdgeSubset::full(cube.m()), cube_tree(cube, "001"), small);
        }) == ErrorCode::EnumerationBoundExceeded);
}

TEST_CASE("non-generic instances are refused") {
  // two equal-cost routes from v; removing d from F exposes the tie
  auto inst = make("t", {{"a", "v", "t", 2}, {"b", "v", "t", 2}, {"c", "u", "t", 5}, {"d", "u", "t", 1}});
  auto b = TreePolicy::from_edges(inst, std::vector<EdgeId>{0, 2});
  CHECK(code_of([&] { expected_pivots_rf(inst, EdgeSubset::full(4), b); }) == ErrorCode::NonGenericInstance);
}

TEST_CASE("tree outside F is an argument error") {
  const auto& inst = errata();
  auto f = EdgeSubset::full(inst.m()).without(edge(inst, "z1"));
  CHECK(code_of([&] { expected_pivots_rf(inst, f, cube_tree(inst, "001")); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("50 random instances with at most 5 edges: f equals brute force, f* equals comptree weighting") {
  auto instances = small_random_instances(50, 5, 1);
  CHECK(instances.size() == 50);
  for (const auto& inst : instances) {
    REQUIRE(genericity_check(inst));
    const auto all = EdgeSubset::full(inst.m());
    for (const auto& b : all_trees(inst, all)) {
      CHECK(expected_pivots_rf(inst, all, b) == rf_brute_force(inst, all, b));
      CHECK(expected_pivots_rf_star(inst, all, b) ==
            build_comptree(inst, all, b, Rule::RandomFacetStar).expected_pivots());
    }
  }
}

TEST_CASE("f equals brute force on 6-edge random instances") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto inst = random_instance(3, 2, 8, 500 + seed);
    const auto all = EdgeSubset::full(inst.m());
    auto trees = all_trees(inst, all);
    const auto& b = trees.at(seed % trees.size());
    CHECK(expected_pivots_rf(inst, all, b) == rf_brute_force(inst, all, b));
  }
}

TEST_CASE("RFACET_MAX_ENUM overrides the permutation bound") {
  CHECK(default_permutation_bound() == kDefaultPermutationBound);
  setenv("RFACET_MAX_ENUM", "4", 1);
  CHECK(default_permutation_bound() == 4);
  setenv("RFACET_MAX_ENUM", "junk", 1);
  CHECK(default_permutation_bound() == kDefaultPermutationBound);
  unsetenv("RFACET_MAX_ENUM");
}

TEST_CASE("parse_rule") {
  CHECK(parse_rule("rf") == Rule::RandomFacet);
  CHECK(parse_rule("rfstar") == Rule::RandomFacetStar);
  CHECK_FALSE(parse_rule("edge").has_value());
}
