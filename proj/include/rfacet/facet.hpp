#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rfacet/graph.hpp"
#include "rfacet/rng.hpp"

namespace rfacet {

// Which recursive call a frame is: the top-level call, the call on F \ {e}, or
// the call on (F, B'') that follows a pivot.
enum class CallKind { Root, First, Second };
std::string_view to_string(CallKind kind);

struct PivotEvent {
  EdgeId entering = kNoEdge;
  EdgeId leaving = kNoEdge;
  std::size_t depth = 0;  // depth of the call that performed the pivot
  CallKind call_kind = CallKind::Root;

  friend bool operator==(const PivotEvent&, const PivotEvent&) = default;
};

struct RunResult {
  TreePolicy final_tree;
  std::size_t pivot_count = 0;
  std::vector<PivotEvent> trace;
};

// Total order on a set of edges; rank 1 is the first element. Edges outside
// the domain have rank 0.
class Permutation {
 public:
  Permutation() = default;
  static Permutation from_order(std::size_t universe, std::span<const EdgeId> order);
  static Permutation from_order(std::size_t universe, std::initializer_list<EdgeId> order) {
    return from_order(universe, std::span<const EdgeId>(order.begin(), order.size()));
  }

  bool contains(EdgeId e) const { return e < rank_.size() && rank_[e] != 0; }
  std::size_t rank(EdgeId e) const { return e < rank_.size() ? rank_[e] : 0; }
  bool precedes(EdgeId a, EdgeId b) const { return rank(a) < rank(b); }
  std::size_t domain_size() const { return size_; }
  std::vector<EdgeId> order() const;

 private:
  std::vector<std::size_t> rank_;
  std::size_t size_ = 0;
};

// What the second recursive call does with the edge e' that just left the tree.
// Keep is the algorithm as written; the drop variants remove e' from the
// second call's facet set (at the top-level call only, or at every call).
enum class LeavingEdgePolicy { Keep, DropAtRoot, DropEverywhere };

struct RecursionOptions {
  std::size_t max_depth = 1'000'000;
  LeavingEdgePolicy leaving = LeavingEdgePolicy::Keep;
};

// A RANDOM / argmin step: the chooser returns an index into `candidates`,
// which lists F \ B in ascending edge id order.
struct ChoicePoint {
  const EdgeSubset& facets;
  const TreePolicy& tree;
  std::span<const EdgeId> candidates;
  std::size_t depth;
};
using Chooser = std::function<std::size_t(const ChoicePoint&)>;

// Optional event log of a run, used by the enumeration engines.
struct CallEnter {
  EdgeSubset facets;
  TreePolicy tree;
  std::size_t depth = 0;
  CallKind kind = CallKind::Root;
};
struct CallExit {
  std::size_t depth = 0;
};
struct ChoiceMade {
  EdgeSubset facets;
  TreePolicy tree;
  std::vector<EdgeId> candidates;
  EdgeId chosen = kNoEdge;
  std::size_t depth = 0;
};
using JournalEntry = std::variant<CallEnter, ChoiceMade, PivotEvent, CallExit>;
using Journal = std::vector<JournalEntry>;

// The shared recursion of both algorithms, run on an explicit stack:
//
//   if F == B: return B
//   e  <- choose(F \ B)
//   B' <- recurse(F \ {e}, B)
//   if e improves B': return recurse(F, pivot(B', e))
//   return B'
//
// Throws RecursionDepthExceeded past options.max_depth and InvalidArgument if
// B is not contained in F.
RunResult run_facet_recursion(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree,
                              const Chooser& choose, const RecursionOptions& options = {},
                              Journal* journal = nullptr);

// Random-Facet: one rng.below(|F \ B|) draw per choice, indexing F \ B in
// ascending edge id order.
template <UniformIndexSource Source>
RunResult run_random_facet(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree, Source& rng,
                           const RecursionOptions& options = {}) {
  return run_facet_recursion(
      inst, facets, tree,
      [&rng](const ChoicePoint& p) { return static_cast<std::size_t>(rng.below(p.candidates.size())); }, options);
}

// Random-Facet*: always the sigma-first edge of F \ B. Throws
// PermutationDomainTooSmall if sigma does not rank every edge of F.
RunResult run_random_facet_star(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree,
                                const Permutation& sigma, const RecursionOptions& options = {});

// One line per event: "pivot depth=<d> call=<kind> enter=<name> leave=<name>".
std::string format_trace(const Instance& inst, std::span<const PivotEvent> trace);

// Re-applies the trace to `initial`, checking every event improves the tree
// it is applied to. Returns the resulting tree.
TreePolicy replay_trace(const Instance& inst, const TreePolicy& initial, std::span<const PivotEvent> trace);

}  // namespace rfacet
