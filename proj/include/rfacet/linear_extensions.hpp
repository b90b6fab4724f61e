#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "rfacet/rational.hpp"

namespace rfacet {

// Precedence constraints a < b over elements 0..universe-1.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  ConstraintSet(std::initializer_list<std::pair<std::size_t, std::size_t>> pairs) : pairs_(pairs) {}

  void add(std::size_t before, std::size_t after) { pairs_.emplace_back(before, after); }
  void add_all(const ConstraintSet& other) { pairs_.insert(pairs_.end(), other.pairs_.begin(), other.pairs_.end()); }
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }

  // False if the relation has a cycle (including a < a), i.e. no total order
  // extends it.
  bool is_consistent(std::size_t universe) const;

 private:
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

inline constexpr std::size_t kMaxBruteForceUniverse = 12;

// Number of total orders of the universe that satisfy every constraint, by
// enumerating all universe! orders. Throws UniverseTooLarge above
// kMaxBruteForceUniverse.
std::uint64_t count_linear_extensions(std::size_t universe, const ConstraintSet& constraints);

// Same count by dynamic programming over downsets (2^universe states), for
// universes too large to enumerate. Throws UniverseTooLarge above 20.
BigInt count_linear_extensions_dp(std::size_t universe, const ConstraintSet& constraints);

// P(query | given) for a uniformly random total order:
// count(given + query) / count(given). Throws ConditioningOnEmptySet when no
// order satisfies `given`.
Rational conditional_order_probability(std::size_t universe, const ConstraintSet& given, const ConstraintSet& query);

}  // namespace rfacet
