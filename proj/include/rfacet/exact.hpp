#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "rfacet/facet.hpp"
#include "rfacet/graph.hpp"
#include "rfacet/rational.hpp"

namespace rfacet {

enum class Rule { RandomFacet, RandomFacetStar };

std::string_view to_string(Rule rule);  // "rf" / "rfstar"
std::optional<Rule> parse_rule(std::string_view text);

inline constexpr std::size_t kDefaultPermutationBound = 10;

// kDefaultPermutationBound unless RFACET_MAX_ENUM holds a positive integer.
std::size_t default_permutation_bound();

struct ExactOptions {
  std::size_t max_permutation_facets = default_permutation_bound();
  LeavingEdgePolicy leaving = LeavingEdgePolicy::Keep;
};

// Expected number of pivots of Random-Facet(F, B):
//
//   f(F, B) = 0                                                   if F == B
//   f(F, B) = 1/|F\B| * sum_{e in F\B} [ f(F\{e}, B)
//                                        + (1 + f(F, B'')) if e improves B' ]
//
// with B' the optimal tree of F\{e} and B'' = pivot(B', e). Memoized on
// (F, B). Throws NonGenericInstance if some B' is not unique.
Rational expected_pivots_rf(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree,
                            const ExactOptions& options = {});

// Mean pivot count of Random-Facet*(F, B, sigma) over all |F|! orders sigma of
// F. No recursion over (F, B) is valid here, so every order is run. Throws
// EnumerationBoundExceeded when |F| > options.max_permutation_facets.
Rational expected_pivots_rf_star(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree,
                                 const ExactOptions& options = {});

}  // namespace rfacet
