#include "rfacet/exact.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <unordered_map>

#include "rfacet/errors.hpp"

namespace rfacet {

std::string_view to_string(Rule rule) { return rule == Rule::RandomFacet ? "rf" : "rfstar"; }

std::optional<Rule> parse_rule(std::string_view text) {
  if (text == "rf") return Rule::RandomFacet;
  if (text == "rfstar" || text == "rf*") return Rule::RandomFacetStar;
  return std::nullopt;
}

std::size_t default_permutation_bound() {
  const char* env = std::getenv("RFACET_MAX_ENUM");
  if (env == nullptr) return kDefaultPermutationBound;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
  if (ec != std::errc() || *ptr != '\0' || value == 0) return kDefaultPermutationBound;
  return value;
}

namespace {

struct StateKey {
  EdgeSubset facets;
  EdgeSubset tree;
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const { return k.facets.hash() * 31 + k.tree.hash(); }
};

class RandomFacetEvaluator {
 public:
  RandomFacetEvaluator(const Instance& inst, bool drop_leaving) : inst_(inst), drop_leaving_(drop_leaving) {}

  Rational value(const EdgeSubset& facets, const TreePolicy& tree) {
    StateKey key{facets, tree.as_subset(inst_.m())};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Rational result = expand(facets, tree, drop_leaving_, *this);
    memo_.emplace(std::move(key), result);
    return result;
  }

  // One level of the recursion; sub-values come from `inner` so the root can
  // use a different leaving-edge rule from the levels below it.
  Rational expand(const EdgeSubset& facets, const TreePolicy& tree, bool drop_leaving, RandomFacetEvaluator& inner) {
    const auto candidates = facets.minus(tree.as_subset(inst_.m())).members();
    if (candidates.empty()) return Rational(0);
    Rational sum(0);
    for (EdgeId e : candidates) {
      EdgeSubset reduced = facets.without(e);
      sum += inner.value(reduced, tree);
      TreePolicy best = unique_optimal_tree(inst_, reduced);
      if (improves(inst_, best, e)) {
        EdgeId leaving = best.choice(inst_.edge(e).tail);
        TreePolicy next = pivot(inst_, best, e);
        sum += 1 + inner.value(drop_leaving ? facets.without(leaving) : facets, next);
      }
    }
    return sum / static_cast<long long>(candidates.size());
  }

 private:
  const Instance& inst_;
  bool drop_leaving_;
  std::unordered_map<StateKey, Rational, StateKeyHash> memo_;
};

void check_arguments(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree) {
  if (facets.universe() != inst.m())
    throw Error(ErrorCode::InvalidArgument, "facet set universe does not match the instance");
  if (!tree_within(tree, facets))
    throw Error(ErrorCode::InvalidArgument, "tree is not contained in the facet set " + format_edge_set(inst, facets));
}

}  // namespace

Rational expected_pivots_rf(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree,
                            const ExactOptions& options) {
  check_arguments(inst, facets, tree);
  switch (options.leaving) {
    case LeavingEdgePolicy::Keep: return RandomFacetEvaluator(inst, false).value(facets, tree);
    case LeavingEdgePolicy::DropEverywhere: return RandomFacetEvaluator(inst, true).value(facets, tree);
    case LeavingEdgePolicy::DropAtRoot: {
      RandomFacetEvaluator below(inst, false);
      return below.expand(facets, tree, true, below);
    }
  }
  return Rational(0);
}

Rational expected_pivots_rf_star(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree,
                                 const ExactOptions& options) {
  check_arguments(inst, facets, tree);
  std::vector<EdgeId> order = facets.members();
  if (order.size() > options.max_permutation_facets)
    throw Error(ErrorCode::EnumerationBoundExceeded,
                std::to_string(order.size()) + " facets exceed the permutation bound of " +
                    std::to_string(options.max_permutation_facets) + "; use a Monte Carlo estimate instead");
  RecursionOptions recursion;
  recursion.leaving = options.leaving;
  BigInt total = 0;
  BigInt runs = 0;
  do {
    auto sigma = Permutation::from_order(inst.m(), order);
    total += run_random_facet_star(inst, facets, tree, sigma, recursion).pivot_count;
    ++runs;
  } while (std::next_permutation(order.begin(), order.end()));
  return Rational(total, runs);
}

}  // namespace rfacet
