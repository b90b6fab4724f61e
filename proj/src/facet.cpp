#include "rfacet/facet.hpp"

#include <sstream>

#include "rfacet/errors.hpp"

namespace rfacet {

std::string_view to_string(CallKind kind) {
  switch (kind) {
    case CallKind::Root: return "root";
    case CallKind::First: return "first";
    case CallKind::Second: return "second";
  }
  return "?";
}

Permutation Permutation::from_order(std::size_t universe, std::span<const EdgeId> order) {
  Permutation p;
  p.rank_.assign(universe, 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    EdgeId e = order[i];
    if (e >= universe) throw Error(ErrorCode::InvalidArgument, "permutation element " + std::to_string(e) + " out of range");
    if (p.rank_[e] != 0) throw Error(ErrorCode::InvalidArgument, "permutation repeats element " + std::to_string(e));
    p.rank_[e] = i + 1;
  }
  p.size_ = order.size();
  return p;
}

std::vector<EdgeId> Permutation::order() const {
  std::vector<EdgeId> out(size_);
  for (EdgeId e = 0; e < rank_.size(); ++e)
    if (rank_[e] != 0) out[rank_[e] - 1] = e;
  return out;
}

namespace {

enum class Stage { Start, AfterFirst, AfterSecond };

struct Frame {
  EdgeSubset facets;
  TreePolicy tree;
  CallKind kind;
  Stage stage = Stage::Start;
  EdgeId chosen = kNoEdge;
};

}  // namespace

RunResult run_facet_recursion(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree,
                              const Chooser& choose, const RecursionOptions& options, Journal* journal) {
  if (facets.universe() != inst.m())
    throw Error(ErrorCode::InvalidArgument, "facet set universe does not match the instance");
  if (!tree_within(tree, facets))
    throw Error(ErrorCode::InvalidArgument, "tree is not contained in the facet set " + format_edge_set(inst, facets));

  RunResult result;
  TreePolicy returned;  // value handed back by the most recently finished call
  std::vector<Frame> stack;
  std::vector<EdgeId> candidates;

  auto push = [&](EdgeSubset f, TreePolicy b, CallKind kind) {
    if (stack.size() >= options.max_depth)
      throw Error(ErrorCode::RecursionDepthExceeded, "recursion deeper than " + std::to_string(options.max_depth));
    if (journal) journal->push_back(CallEnter{f, b, stack.size(), kind});
    stack.push_back(Frame{std::move(f), std::move(b), kind});
  };
  auto pop = [&](TreePolicy value) {
    returned = std::move(value);
    stack.pop_back();
    if (journal) journal->push_back(CallExit{stack.size()});
  };

  push(facets, tree, CallKind::Root);
  while (!stack.empty()) {
    const std::size_t depth = stack.size() - 1;
    Frame& frame = stack.back();
    switch (frame.stage) {
      case Stage::Start: {
        candidates = frame.facets.minus(frame.tree.as_subset(inst.m())).members();
        if (candidates.empty()) {
          pop(frame.tree);
          break;
        }
        std::size_t pick = choose(ChoicePoint{frame.facets, frame.tree, candidates, depth});
        if (pick >= candidates.size()) throw Error(ErrorCode::InvalidArgument, "chooser returned an out-of-range index");
        frame.chosen = candidates[pick];
        frame.stage = Stage::AfterFirst;
        if (journal) journal->push_back(ChoiceMade{frame.facets, frame.tree, candidates, frame.chosen, depth});
        EdgeSubset reduced = frame.facets.without(frame.chosen);
        TreePolicy start = frame.tree;
        push(std::move(reduced), std::move(start), CallKind::First);
        break;
      }
      case Stage::AfterFirst: {
        const EdgeId e = frame.chosen;
        if (!improves(inst, returned, e)) {
          frame.stage = Stage::AfterSecond;
          break;
        }
        PivotEvent event{e, returned.choice(inst.edge(e).tail), depth, frame.kind};
        TreePolicy next = pivot(inst, returned, e);
        ++result.pivot_count;
        result.trace.push_back(event);
        if (journal) journal->push_back(event);

        const bool drop = options.leaving == LeavingEdgePolicy::DropEverywhere ||
                          (options.leaving == LeavingEdgePolicy::DropAtRoot && depth == 0);
        EdgeSubset second = drop ? frame.facets.without(event.leaving) : frame.facets;
        frame.stage = Stage::AfterSecond;
        push(std::move(second), std::move(next), CallKind::Second);
        break;
      }
      case Stage::AfterSecond:
        // `returned` holds B' (no pivot) or the second call's result.
        pop(returned);
        break;
    }
  }
  result.final_tree = std::move(returned);
  return result;
}

RunResult run_random_facet_star(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree,
                                const Permutation& sigma, const RecursionOptions& options) {
  for (EdgeId e : facets.members()) {
    if (!sigma.contains(e))
      throw Error(ErrorCode::PermutationDomainTooSmall, "permutation does not rank edge '" + inst.edge(e).name + "'");
  }
  return run_facet_recursion(
      inst, facets, tree,
      [&sigma](const ChoicePoint& p) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < p.candidates.size(); ++i)
          if (sigma.precedes(p.candidates[i], p.candidates[best])) best = i;
        return best;
      },
      options);
}

std::string format_trace(const Instance& inst, std::span<const PivotEvent> trace) {
  std::ostringstream out;
  for (const auto& ev : trace) {
    out << "pivot depth=" << ev.depth << " call=" << to_string(ev.call_kind) << " enter=" << inst.edge(ev.entering).name
        << " leave=" << inst.edge(ev.leaving).name << '\n';
  }
  return out.str();
}

TreePolicy replay_trace(const Instance& inst, const TreePolicy& initial, std::span<const PivotEvent> trace) {
  TreePolicy current = initial;
  for (const auto& ev : trace) {
    if (ev.entering == ev.leaving || inst.edge(ev.entering).tail != inst.edge(ev.leaving).tail)
      throw Error(ErrorCode::InvalidArgument, "malformed pivot event");
    if (current.choice(inst.edge(ev.entering).tail) != ev.leaving)
      throw Error(ErrorCode::InvalidArgument, "pivot leaves '" + inst.edge(ev.leaving).name + "' which is not in the tree");
    current = pivot(inst, current, ev.entering);
  }
  return current;
}

}  // namespace rfacet
