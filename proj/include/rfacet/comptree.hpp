#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rfacet/exact.hpp"
#include "rfacet/facet.hpp"
#include "rfacet/graph.hpp"
#include "rfacet/rational.hpp"

namespace rfacet {

// One complete run of the recursion, as produced by for_each_execution.
struct Execution {
  Journal journal;
  std::vector<ChoiceMade> choices;  // in the order they were made
  RunResult result;
};

// Enumerates every run of the recursion from (F, B), one per sequence of
// choice outcomes, by replaying scripted choices. `admissible` may veto an
// outcome given the choices made so far (used to skip orders that no
// permutation realizes). The visitor returns false to stop early. Throws
// EnumerationBoundExceeded after `max_executions` runs.
using AdmissibleChoice =
    std::function<bool(std::span<const ChoiceMade> history, std::span<const EdgeId> candidates, EdgeId pick)>;
void for_each_execution(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree,
                        const RecursionOptions& recursion, const AdmissibleChoice& admissible,
                        const std::function<bool(const Execution&)>& visit,
                        std::size_t max_executions = 5'000'000);

enum class NodeKind { Choice, Pick, Pivot, Leaf };
std::string_view to_string(NodeKind kind);

inline constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

struct CompNode {
  NodeKind kind = NodeKind::Leaf;
  std::size_t parent = kNoNode;
  std::vector<std::size_t> children;
  // Conditional probability of moving from the parent to this node. Only Pick
  // nodes carry values other than 1.
  Rational probability{1};
  // Probability of reaching this node from the root.
  Rational reach{0};
  EdgeId edge = kNoEdge;     // Pick: chosen edge. Pivot: entering edge.
  EdgeId leaving = kNoEdge;  // Pivot: displaced edge.
  // Choice: the call's state and its candidates F \ B.
  EdgeSubset facets;
  TreePolicy tree;
  std::vector<EdgeId> candidates;
  std::size_t pivots = 0;  // Leaf: pivots on the root-to-leaf path.
};

// Probability tree over runs: Choice nodes branch into Pick nodes (one per
// chosen edge), Pivot nodes record improving switches, Leaves end a run.
class CompTree {
 public:
  CompTree(Rule rule, std::vector<CompNode> nodes) : rule_(rule), nodes_(std::move(nodes)) {}

  Rule rule() const { return rule_; }
  const std::vector<CompNode>& nodes() const { return nodes_; }
  const CompNode& node(std::size_t id) const { return nodes_.at(id); }
  std::size_t root() const { return 0; }

  std::vector<std::size_t> leaves() const;
  // Node ids from the root down to `id`, inclusive.
  std::vector<std::size_t> path_to(std::size_t id) const;
  Rational expected_pivots() const;

 private:
  Rule rule_;
  std::vector<CompNode> nodes_;
};

struct CompTreeOptions {
  // Hide the choices inside any call that can only ever produce one pivot
  // sequence, showing its pivots alone.
  bool collapse_deterministic_calls = false;
  LeavingEdgePolicy leaving = LeavingEdgePolicy::Keep;
  std::size_t max_permutation_facets = default_permutation_bound();
  std::size_t max_executions = 5'000'000;
};

// Random-Facet branches uniformly at every choice. For Random-Facet* a branch
// is weighted by the number of orders of F that realize the history up to and
// including that choice (each choice "e out of C" means e precedes C \ {e}),
// divided by the number realizing the history before it.
CompTree build_comptree(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree, Rule rule,
                        const CompTreeOptions& options = {});

// One node per line: "<id> <parent|-> <kind> <label> <p/q> <pivots|->" with a
// leading '#' header line.
std::string comptree_to_text(const Instance& inst, const CompTree& tree);
std::string comptree_to_dot(const Instance& inst, const CompTree& tree);

}  // namespace rfacet
