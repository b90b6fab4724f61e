#include "rfacet/comptree.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "rfacet/errors.hpp"
#include "rfacet/linear_extensions.hpp"

namespace rfacet {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Choice: return "choice";
    case NodeKind::Pick: return "pick";
    case NodeKind::Pivot: return "pivot";
    case NodeKind::Leaf: return "leaf";
  }
  return "?";
}

void for_each_execution(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree,
                        const RecursionOptions& recursion, const AdmissibleChoice& admissible,
                        const std::function<bool(const Execution&)>& visit, std::size_t max_executions) {
  // script[k] indexes the admissible outcomes of the k-th choice; it is
  // advanced like an odometer, rightmost position first.
  std::vector<std::size_t> script;
  std::size_t runs = 0;
  for (;;) {
    if (runs++ >= max_executions)
      throw Error(ErrorCode::EnumerationBoundExceeded, "more than " + std::to_string(max_executions) + " executions");
    Execution ex;
    std::vector<std::size_t> option_counts;
    std::vector<std::size_t> options;
    auto chooser = [&](const ChoicePoint& p) -> std::size_t {
      options.clear();
      for (std::size_t i = 0; i < p.candidates.size(); ++i)
        if (!admissible || admissible(ex.choices, p.candidates, p.candidates[i])) options.push_back(i);
      if (options.empty()) throw std::logic_error("no admissible outcome at a choice point");
      const std::size_t step = option_counts.size();
      if (step == script.size()) script.push_back(0);
      option_counts.push_back(options.size());
      const std::size_t index = options.at(script[step]);
      ex.choices.push_back(ChoiceMade{p.facets, p.tree, std::vector<EdgeId>(p.candidates.begin(), p.candidates.end()),
                                      p.candidates[index], p.depth});
      return index;
    };
    ex.result = run_facet_recursion(inst, facets, tree, chooser, recursion, &ex.journal);
    if (!visit(ex)) return;
    while (!script.empty() && script.back() + 1 >= option_counts[script.size() - 1]) script.pop_back();
    if (script.empty()) return;
    ++script.back();
  }
}

std::vector<std::size_t> CompTree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].kind == NodeKind::Leaf) out.push_back(i);
  return out;
}

std::vector<std::size_t> CompTree::path_to(std::size_t id) const {
  std::vector<std::size_t> path;
  for (std::size_t at = id; at != kNoNode; at = nodes_.at(at).parent) path.push_back(at);
  return {path.rbegin(), path.rend()};
}

Rational CompTree::expected_pivots() const {
  Rational sum(0);
  for (const auto& node : nodes_)
    if (node.kind == NodeKind::Leaf) sum += node.reach * static_cast<long long>(node.pivots);
  return sum;
}

namespace {

// Transitive precedence relation over at most 32 elements.
class OrderRelation {
 public:
  explicit OrderRelation(std::size_t universe) : after_(universe, 0) {}

  bool forces(std::size_t a, std::size_t b) const { return (after_[a] >> b) & 1u; }

  void add(std::size_t a, std::size_t b) {
    const std::uint32_t gained = (std::uint32_t{1} << b) | after_[b];
    for (std::size_t x = 0; x < after_.size(); ++x)
      if (x == a || forces(x, a)) after_[x] |= gained;
  }

 private:
  std::vector<std::uint32_t> after_;
};

// Maps edge ids of the top-level facet set onto 0..k-1.
class Universe {
 public:
  Universe(std::size_t m, const EdgeSubset& facets) : index_(m, kNoEdge) {
    for (EdgeId e : facets.members()) index_[e] = static_cast<EdgeId>(size_++);
  }
  std::size_t size() const { return size_; }
  std::size_t operator[](EdgeId e) const { return index_.at(e); }

 private:
  std::vector<EdgeId> index_;
  std::size_t size_ = 0;
};

OrderRelation history_relation(const Universe& universe, std::span<const ChoiceMade> history) {
  OrderRelation rel(universe.size());
  for (const auto& c : history)
    for (EdgeId other : c.candidates)
      if (other != c.chosen) rel.add(universe[c.chosen], universe[other]);
  return rel;
}

ConstraintSet history_constraints(const Universe& universe, std::span<const ChoiceMade> history) {
  ConstraintSet cs;
  for (const auto& c : history)
    for (EdgeId other : c.candidates)
      if (other != c.chosen) cs.add(universe[c.chosen], universe[other]);
  return cs;
}

LeavingEdgePolicy policy_at_depth(LeavingEdgePolicy policy, std::size_t depth) {
  if (policy == LeavingEdgePolicy::DropAtRoot) return depth == 0 ? policy : LeavingEdgePolicy::Keep;
  return policy;
}

// Whether every run of a call can produce only one pivot sequence.
class CollapseOracle {
 public:
  explicit CollapseOracle(const Instance& inst, std::size_t max_executions)
      : inst_(inst), max_executions_(max_executions) {}

  bool deterministic(const EdgeSubset& facets, const TreePolicy& tree, LeavingEdgePolicy policy) {
    Key key{facets, tree.as_subset(inst_.m()), policy};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    RecursionOptions recursion;
    recursion.leaving = policy;
    std::optional<std::vector<std::pair<EdgeId, EdgeId>>> first;
    bool unique = true;
    for_each_execution(
        inst_, facets, tree, recursion, nullptr,
        [&](const Execution& ex) {
          std::vector<std::pair<EdgeId, EdgeId>> seq;
          for (const auto& ev : ex.result.trace) seq.emplace_back(ev.entering, ev.leaving);
          if (!first) {
            first = std::move(seq);
            return true;
          }
          unique = (seq == *first);
          return unique;
        },
        max_executions_);
    memo_.emplace(std::move(key), unique);
    return unique;
  }

 private:
  struct Key {
    EdgeSubset facets;
    EdgeSubset tree;
    LeavingEdgePolicy policy;
    auto operator<=>(const Key&) const = default;
  };
  const Instance& inst_;
  std::size_t max_executions_;
  std::map<Key, bool> memo_;
};

struct VisibleEvent {
  NodeKind kind;
  const ChoiceMade* choice = nullptr;
  PivotEvent pivot;
};

class TreeBuilder {
 public:
  void add(const std::vector<VisibleEvent>& events, std::size_t pivots, const Rational& weight) {
    std::size_t at = kNoNode;
    for (const auto& ev : events) {
      if (ev.kind == NodeKind::Choice) {
        std::size_t id = follow(at, ev);
        nodes_[id].reach += weight;
        std::size_t pick = kNoNode;
        for (std::size_t child : nodes_[id].children)
          if (nodes_[child].edge == ev.choice->chosen) pick = child;
        if (pick == kNoNode) {
          CompNode node;
          node.kind = NodeKind::Pick;
          node.parent = id;
          node.edge = ev.choice->chosen;
          pick = append(std::move(node));
          nodes_[id].children.push_back(pick);
        }
        nodes_[pick].reach += weight;
        at = pick;
      } else {
        std::size_t id = follow(at, ev);
        nodes_[id].reach += weight;
        at = id;
      }
    }
    VisibleEvent leaf{NodeKind::Leaf, nullptr, {}};
    std::size_t id = follow(at, leaf);
    if (nodes_[id].reach != 0 && nodes_[id].pivots != pivots)
      throw std::logic_error("runs sharing a visible path end with different pivot counts");
    nodes_[id].pivots = pivots;
    nodes_[id].reach += weight;
  }

  std::vector<CompNode> finish() {
    for (auto& node : nodes_) {
      if (node.parent == kNoNode) continue;
      const CompNode& parent = nodes_[node.parent];
      node.probability = node.reach / parent.reach;
      if (node.kind != NodeKind::Pick && node.probability != 1)
        throw std::logic_error("non-branching node with probability below one");
    }
    return std::move(nodes_);
  }

 private:
  std::size_t append(CompNode node) {
    nodes_.push_back(std::move(node));
    return nodes_.size() - 1;
  }

  static bool same_event(const CompNode& node, const VisibleEvent& ev) {
    if (node.kind != ev.kind) return false;
    switch (ev.kind) {
      case NodeKind::Choice:
        return node.candidates == ev.choice->candidates && node.facets == ev.choice->facets &&
               node.tree == ev.choice->tree;
      case NodeKind::Pivot: return node.edge == ev.pivot.entering && node.leaving == ev.pivot.leaving;
      default: return true;
    }
  }

  // Node for `ev` directly below `at` (the root when at == kNoNode).
  std::size_t follow(std::size_t at, const VisibleEvent& ev) {
    const bool has_next = at == kNoNode ? !nodes_.empty() : !nodes_[at].children.empty();
    if (has_next) {
      std::size_t id = at == kNoNode ? 0 : nodes_[at].children.front();
      if (!same_event(nodes_[id], ev)) throw std::logic_error("runs sharing a visible path diverge without a choice");
      return id;
    }
    CompNode node;
    node.kind = ev.kind;
    node.parent = at;
    if (ev.kind == NodeKind::Choice) {
      node.facets = ev.choice->facets;
      node.tree = ev.choice->tree;
      node.candidates = ev.choice->candidates;
    } else if (ev.kind == NodeKind::Pivot) {
      node.edge = ev.pivot.entering;
      node.leaving = ev.pivot.leaving;
    }
    std::size_t id = append(std::move(node));
    if (at != kNoNode) nodes_[at].children.push_back(id);
    return id;
  }

  std::vector<CompNode> nodes_;
};

}  // namespace

CompTree build_comptree(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree, Rule rule,
                        const CompTreeOptions& options) {
  if (facets.universe() != inst.m())
    throw Error(ErrorCode::InvalidArgument, "facet set universe does not match the instance");
  const Universe universe(inst.m(), facets);
  if (rule == Rule::RandomFacetStar) {
    const std::size_t bound = std::min<std::size_t>(options.max_permutation_facets, 20);
    if (universe.size() > bound)
      throw Error(ErrorCode::EnumerationBoundExceeded, std::to_string(universe.size()) +
                                                           " facets exceed the permutation bound of " +
                                                           std::to_string(bound));
  }

  RecursionOptions recursion;
  recursion.leaving = options.leaving;

  AdmissibleChoice admissible;
  if (rule == Rule::RandomFacetStar) {
    admissible = [&universe](std::span<const ChoiceMade> history, std::span<const EdgeId> candidates, EdgeId pick) {
      OrderRelation rel = history_relation(universe, history);
      for (EdgeId other : candidates)
        if (other != pick && rel.forces(universe[other], universe[pick])) return false;
      return true;
    };
  }

  const BigInt orders = factorial(static_cast<unsigned>(universe.size()));
  CollapseOracle oracle(inst, options.max_executions);
  TreeBuilder builder;

  for_each_execution(
      inst, facets, tree, recursion, admissible,
      [&](const Execution& ex) {
        Rational weight(1);
        if (rule == Rule::RandomFacet) {
          for (const auto& c : ex.choices) weight /= static_cast<long long>(c.candidates.size());
        } else {
          weight = Rational(count_linear_extensions_dp(universe.size(), history_constraints(universe, ex.choices)),
                            orders);
        }

        std::vector<VisibleEvent> events;
        std::optional<std::size_t> hidden_depth;
        std::size_t next_choice = 0;
        for (const auto& entry : ex.journal) {
          if (const auto* enter = std::get_if<CallEnter>(&entry)) {
            if (options.collapse_deterministic_calls && !hidden_depth &&
                oracle.deterministic(enter->facets, enter->tree, policy_at_depth(options.leaving, enter->depth)))
              hidden_depth = enter->depth;
          } else if (const auto* exit = std::get_if<CallExit>(&entry)) {
            if (hidden_depth && *hidden_depth == exit->depth) hidden_depth.reset();
          } else if (std::holds_alternative<ChoiceMade>(entry)) {
            const ChoiceMade& choice = ex.choices.at(next_choice++);
            if (!hidden_depth) events.push_back(VisibleEvent{NodeKind::Choice, &choice, {}});
          } else {
            events.push_back(VisibleEvent{NodeKind::Pivot, nullptr, std::get<PivotEvent>(entry)});
          }
        }
        builder.add(events, ex.result.pivot_count, weight);
        return true;
      },
      options.max_executions);

  return CompTree(rule, builder.finish());
}

namespace {

std::string node_label(const Instance& inst, const CompNode& node) {
  switch (node.kind) {
    case NodeKind::Choice: return format_edge_set(inst, node.candidates);
    case NodeKind::Pick: return inst.edge(node.edge).name;
    case NodeKind::Pivot: return inst.edge(node.edge).name;
    case NodeKind::Leaf: return "-";
  }
  return "-";
}

}  // namespace

std::string comptree_to_text(const Instance& inst, const CompTree& tree) {
  std::ostringstream out;
  out << "# id parent kind label probability pivots\n";
  for (std::size_t id = 0; id < tree.nodes().size(); ++id) {
    const CompNode& node = tree.node(id);
    out << id << ' ';
    if (node.parent == kNoNode)
      out << '-';
    else
      out << node.parent;
    out << ' ' << to_string(node.kind) << ' ' << node_label(inst, node) << ' ' << to_fraction_string(node.probability)
        << ' ';
    if (node.kind == NodeKind::Leaf)
      out << node.pivots;
    else
      out << '-';
    out << '\n';
  }
  return out.str();
}

std::string comptree_to_dot(const Instance& inst, const CompTree& tree) {
  std::ostringstream out;
  out << "digraph comptree {\n";
  out << "  label=\"" << to_string(tree.rule()) << "\";\n";
  out << "  node [fontname=\"Helvetica\"];\n";
  for (std::size_t id = 0; id < tree.nodes().size(); ++id) {
    const CompNode& node = tree.node(id);
    out << "  n" << id << " [";
    switch (node.kind) {
      case NodeKind::Choice:
        out << "shape=box, label=\"F\\\\B = " << format_edge_set(inst, node.candidates) << "\"";
        break;
      case NodeKind::Pick:
        out << "shape=square, label=\"" << inst.edge(node.edge).name << "\\n" << to_fraction_string(node.probability)
            << "\"";
        break;
      case NodeKind::Pivot:
        out << "shape=plaintext, label=\"pivot " << inst.edge(node.edge).name << " (" << inst.edge(node.leaving).name
            << " leaves)\"";
        break;
      case NodeKind::Leaf:
        out << "shape=doublecircle, label=\"" << node.pivots << " pivots\\np=" << to_fraction_string(node.reach)
            << "\"";
        break;
    }
    out << "];\n";
  }
  for (std::size_t id = 0; id < tree.nodes().size(); ++id) {
    const CompNode& node = tree.node(id);
    if (node.parent == kNoNode) continue;
    out << "  n" << node.parent << " -> n" << id;
    if (node.kind == NodeKind::Pick) out << " [label=\"" << to_fraction_string(node.probability) << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace rfacet
