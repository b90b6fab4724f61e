#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rfacet/graph.hpp"

namespace rfacet {

// Trees of an instance in which every non-target vertex has exactly two
// out-edges, viewed as binary strings. Axis j is the j-th vertex to appear as
// an edge tail; its "0" edge is the lower edge id. Character j of a string
// (bit j of an index) selects the edge at axis j.
class CubeEncoding {
 public:
  // Throws NotCubeShaped unless every vertex has two out-edges and all 2^n
  // choices are trees.
  static CubeEncoding of(const Instance& inst);

  std::size_t dimension() const { return axes_.size(); }
  std::uint32_t vertex_count() const { return std::uint32_t{1} << axes_.size(); }
  VertexId axis_vertex(std::size_t axis) const { return axes_.at(axis); }
  EdgeId axis_edge(std::size_t axis, unsigned bit) const { return edges_.at(axis)[bit]; }

  TreePolicy decode(const Instance& inst, std::uint32_t index) const;
  TreePolicy decode(const Instance& inst, std::string_view bits) const;
  std::uint32_t index_of(const TreePolicy& tree) const;
  std::string bits_of(const TreePolicy& tree) const;
  std::string bits_of(std::uint32_t index) const;
  std::uint32_t index_of(std::string_view bits) const;

 private:
  std::vector<VertexId> axes_;
  std::vector<std::array<EdgeId, 2>> edges_;
};

// The cube of trees with every edge oriented in its improving direction.
class OrientationView {
 public:
  OrientationView(CubeEncoding encoding, std::vector<std::uint32_t> improving)
      : encoding_(std::move(encoding)), improving_(std::move(improving)) {}

  const CubeEncoding& encoding() const { return encoding_; }
  std::size_t dimension() const { return encoding_.dimension(); }

  // Axes along which a pivot from `vertex` is improving.
  std::uint32_t improving_axes(std::uint32_t vertex) const { return improving_.at(vertex); }

  bool is_acyclic() const;
  // Sinks of the face whose axes in `fixed_mask` are pinned to `fixed_values`.
  std::vector<std::uint32_t> face_sinks(std::uint32_t fixed_mask, std::uint32_t fixed_values) const;
  bool every_face_has_unique_sink() const;
  // Sink of the whole cube; throws NonGenericInstance if it is not unique.
  std::uint32_t sink() const;
  // Directed paths from `from` to `to`; requires an acyclic orientation.
  std::uint64_t count_paths(std::uint32_t from, std::uint32_t to) const;

 private:
  CubeEncoding encoding_;
  std::vector<std::uint32_t> improving_;
};

// Throws NotCubeShaped, or NonGenericInstance if some cube edge is a tie.
OrientationView orientation_view(const Instance& inst);

inline constexpr std::size_t kMaxExhaustiveGenericityEdges = 20;

// True iff every edge subset that contains a tree has exactly one optimal
// tree. Enumerates all subsets and all trees inside each; throws
// TooLargeForExhaustiveCheck above kMaxExhaustiveGenericityEdges edges.
bool genericity_check(const Instance& inst);

// Instances up to this many edges are screened with genericity_check.
inline constexpr std::size_t kRandomGenericityEdges = 12;

// Vertices v1..vn and target t, each vertex with `out_degree` edges named
// v<i>_<k> to uniformly chosen other vertices, costs uniform in
// [-cost_bound/2, cost_bound]. Rejection-samples until the instance is valid,
// every vertex reaches t, and (for at most kRandomGenericityEdges edges) the
// instance is generic. Deterministic in `seed`. Throws
// GenerationFailedAfterRetries.
Instance random_instance(std::size_t n, std::size_t out_degree, Cost cost_bound, std::uint64_t seed);

// Whether a 3-vertex cube instance with edges x0..z1 shows all of the
// counterexample behaviour: generic, optimum 000, three improving paths from 001
// and from 111, and the four exact expectations.
bool matches_errata_values(const Instance& inst);

// Searches x, y, z with edges v0 (cost 0) and v1 (cost 1..8), heads over
// {x, y, z, t} minus the tail. Heads are enumerated before costs, x0 slowest
// and z1 fastest, each range ascending; the first candidate passing
// matches_errata_values is returned. Throws SearchExhausted.
Instance derive_errata_instance(std::size_t* candidates_examined = nullptr);

}  // namespace rfacet
