#include "rfacet/linear_extensions.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rfacet/errors.hpp"

namespace rfacet {

namespace {

void check_elements(std::size_t universe, const ConstraintSet& constraints) {
  for (auto [a, b] : constraints.pairs()) {
    if (a >= universe || b >= universe)
      throw Error(ErrorCode::InvalidArgument, "constraint element outside universe of size " + std::to_string(universe));
  }
}

// predecessors[v] = bitmask of elements that must precede v
std::vector<std::uint32_t> predecessor_masks(std::size_t universe, const ConstraintSet& constraints) {
  std::vector<std::uint32_t> pred(universe, 0);
  for (auto [a, b] : constraints.pairs()) pred[b] |= std::uint32_t{1} << a;
  return pred;
}

}  // namespace

bool ConstraintSet::is_consistent(std::size_t universe) const {
  check_elements(universe, *this);
  // Kahn's algorithm: consistent iff every element can be removed.
  std::vector<std::size_t> indegree(universe, 0);
  std::vector<std::vector<std::size_t>> succ(universe);
  for (auto [a, b] : pairs_) {
    succ[a].push_back(b);
    ++indegree[b];
  }
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < universe; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t removed = 0;
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t w : succ[v])
      if (--indegree[w] == 0) ready.push_back(w);
  }
  return removed == universe;
}

std::uint64_t count_linear_extensions(std::size_t universe, const ConstraintSet& constraints) {
  if (universe > kMaxBruteForceUniverse)
    throw Error(ErrorCode::UniverseTooLarge, "brute-force enumeration limited to " +
                                                 std::to_string(kMaxBruteForceUniverse) + " elements");
  check_elements(universe, constraints);
  std::vector<std::size_t> order(universe);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> position(universe);
  std::uint64_t count = 0;
  do {
    for (std::size_t i = 0; i < universe; ++i) position[order[i]] = i;
    bool ok = true;
    for (auto [a, b] : constraints.pairs()) {
      if (position[a] >= position[b]) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  return count;
}

BigInt count_linear_extensions_dp(std::size_t universe, const ConstraintSet& constraints) {
  if (universe > 20) throw Error(ErrorCode::UniverseTooLarge, "downset enumeration limited to 20 elements");
  check_elements(universe, constraints);
  const auto pred = predecessor_masks(universe, constraints);
  const std::size_t states = std::size_t{1} << universe;
  // ways[S] = number of ways to order S as a prefix respecting the constraints
  std::vector<BigInt> ways(states, 0);
  ways[0] = 1;
  for (std::size_t s = 0; s < states; ++s) {
    if (ways[s] == 0) continue;
    for (std::size_t v = 0; v < universe; ++v) {
      const auto bit = std::size_t{1} << v;
      if ((s & bit) != 0 || (pred[v] & ~s) != 0) continue;
      ways[s | bit] += ways[s];
    }
  }
  return ways[states - 1];
}

Rational conditional_order_probability(std::size_t universe, const ConstraintSet& given, const ConstraintSet& query) {
  const BigInt base = count_linear_extensions(universe, given);
  if (base == 0) throw Error(ErrorCode::ConditioningOnEmptySet, "no total order satisfies the given constraints");
  ConstraintSet both = given;
  both.add_all(query);
  return Rational(BigInt(count_linear_extensions(universe, both)), base);
}

}  // namespace rfacet
