#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rfacet {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Cost = std::int64_t;

inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

struct Edge {
  EdgeId id = 0;
  std::string name;
  VertexId tail = 0;
  VertexId head = 0;
  Cost cost = 0;
};

// Edge as written by a user: endpoints by vertex name.
struct EdgeSpec {
  std::string name;
  std::string tail;
  std::string head;
  Cost cost = 0;
};

// Weighted digraph with a designated target. Vertex ids are assigned with the
// target first and then in order of first appearance among the edge endpoints;
// edge ids follow the order of the edge list. Structural invariants (out-degree,
// negative cycles) are checked by validate_instance, not by the constructor.
class Instance {
 public:
  Instance() = default;
  Instance(std::string target, const std::vector<EdgeSpec>& edges);

  VertexId target() const { return 0; }
  std::size_t vertex_count() const { return names_.size(); }
  // Number of non-target vertices.
  std::size_t n() const { return names_.size() - 1; }
  std::size_t m() const { return edges_.size(); }

  const std::string& vertex_name(VertexId v) const { return names_.at(v); }
  std::optional<VertexId> find_vertex(std::string_view name) const;

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const EdgeId> out_edges(VertexId v) const { return out_.at(v); }
  std::optional<EdgeId> find_edge(std::string_view name) const;

  std::vector<EdgeSpec> edge_specs() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.names_.at(0) == b.names_.at(0) && a.edge_specs_equal(b);
  }

 private:
  bool edge_specs_equal(const Instance& other) const;
  VertexId intern(const std::string& name);

  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, EdgeId> edge_index_;
  std::vector<std::vector<EdgeId>> out_;
};

// A set of edge ids drawn from a fixed universe 0..universe-1.
class EdgeSubset {
 public:
  EdgeSubset() = default;
  explicit EdgeSubset(std::size_t universe);

  static EdgeSubset full(std::size_t universe);
  static EdgeSubset of(std::size_t universe, std::span<const EdgeId> members);
  static EdgeSubset of(std::size_t universe, std::initializer_list<EdgeId> members) {
    return of(universe, std::span<const EdgeId>(members.begin(), members.size()));
  }

  std::size_t universe() const { return universe_; }
  bool contains(EdgeId e) const {
    return e < universe_ && ((words_[e / 64] >> (e % 64)) & 1u) != 0;
  }
  void insert(EdgeId e);
  void erase(EdgeId e);

  EdgeSubset without(EdgeId e) const;
  EdgeSubset minus(const EdgeSubset& other) const;
  bool is_subset_of(const EdgeSubset& other) const;

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<EdgeId> members() const;
  std::size_t hash() const;

  friend bool operator==(const EdgeSubset&, const EdgeSubset&) = default;
  friend auto operator<=>(const EdgeSubset&, const EdgeSubset&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct EdgeSubsetHash {
  std::size_t operator()(const EdgeSubset& s) const { return s.hash(); }
};

// One outgoing edge per non-target vertex, all paths leading to the target.
class TreePolicy {
 public:
  TreePolicy() = default;

  // Throws InvalidTree unless exactly one edge per non-target vertex is given,
  // and NotATree if following the choices does not always reach the target.
  static TreePolicy from_edges(const Instance& inst, std::span<const EdgeId> edges);

  EdgeId choice(VertexId v) const { return choice_.at(v); }
  std::size_t vertex_count() const { return choice_.size(); }
  bool uses(EdgeId e) const;

  // Edges in ascending id order.
  std::vector<EdgeId> edges() const;
  EdgeSubset as_subset(std::size_t universe) const;

  friend bool operator==(const TreePolicy&, const TreePolicy&) = default;

 private:
  friend TreePolicy replace_choice(const Instance& inst, const TreePolicy& tree, EdgeId e);
  std::vector<EdgeId> choice_;  // indexed by vertex; kNoEdge at the target
};

// Same tree with the choice at tail(e) replaced by e. No validity check.
TreePolicy replace_choice(const Instance& inst, const TreePolicy& tree, EdgeId e);

struct DistanceMap {
  std::vector<Cost> dist;  // indexed by vertex; dist[target] == 0

  Cost operator[](VertexId v) const { return dist.at(v); }
  friend bool operator==(const DistanceMap&, const DistanceMap&) = default;
};

// Checks out-degrees and the absence of negative cycles; returns the instance
// unchanged. Throws DanglingVertex, TargetHasOutEdges or NegativeCycle.
Instance validate_instance(Instance raw);

DistanceMap tree_distances(const Instance& inst, const TreePolicy& tree);

// cost(e) + d(head(e)) < d(tail(e)), strictly.
bool improves(const Instance& inst, const TreePolicy& tree, EdgeId e);
bool improves(const Instance& inst, const DistanceMap& dist, EdgeId e);

// Swap e in at its tail. Throws NotImproving if e does not improve the tree.
TreePolicy pivot(const Instance& inst, const TreePolicy& tree, EdgeId e);

// Shortest-path tree of the subgraph (V, facets) by Bellman-Ford, ties broken
// by smallest edge id. Throws NoTreeInSubset if some vertex cannot reach the
// target inside the subset.
TreePolicy optimal_tree(const Instance& inst, const EdgeSubset& facets);

// True if no other tree inside `facets` attains the distances of `optimum`.
bool optimum_is_unique(const Instance& inst, const EdgeSubset& facets, const TreePolicy& optimum);

// optimal_tree, but throws NonGenericInstance when the optimum is not unique.
TreePolicy unique_optimal_tree(const Instance& inst, const EdgeSubset& facets);

bool tree_within(const TreePolicy& tree, const EdgeSubset& facets);

// "{x0,y1}" using edge names.
std::string format_edge_set(const Instance& inst, std::span<const EdgeId> edges);
std::string format_edge_set(const Instance& inst, const EdgeSubset& edges);

}  // namespace rfacet
