#include "rfacet/graph.hpp"

#include <algorithm>
#include <bit>

#include "rfacet/errors.hpp"

namespace rfacet {

// ---------------------------------------------------------------------------
// Instance

Instance::Instance(std::string target, const std::vector<EdgeSpec>& edges) {
  intern(target);
  for (const auto& spec : edges) {
    if (edge_index_.count(spec.name) != 0)
      throw Error(ErrorCode::DuplicateEdgeName, "edge '" + spec.name + "' defined twice");
    Edge edge;
    edge.id = static_cast<EdgeId>(edges_.size());
    edge.name = spec.name;
    edge.tail = intern(spec.tail);
    edge.head = intern(spec.head);
    edge.cost = spec.cost;
    edge_index_.emplace(spec.name, edge.id);
    edges_.push_back(std::move(edge));
  }
  out_.assign(names_.size(), {});
  for (const auto& e : edges_) out_[e.tail].push_back(e.id);
}

VertexId Instance::intern(const std::string& name) {
  auto it = vertex_index_.find(name);
  if (it != vertex_index_.end()) return it->second;
  auto id = static_cast<VertexId>(names_.size());
  names_.push_back(name);
  vertex_index_.emplace(name, id);
  return id;
}

std::optional<VertexId> Instance::find_vertex(std::string_view name) const {
  auto it = vertex_index_.find(std::string(name));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Instance::find_edge(std::string_view name) const {
  auto it = edge_index_.find(std::string(name));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<EdgeSpec> Instance::edge_specs() const {
  std::vector<EdgeSpec> specs;
  specs.reserve(edges_.size());
  for (const auto& e : edges_) specs.push_back({e.name, names_[e.tail], names_[e.head], e.cost});
  return specs;
}

bool Instance::edge_specs_equal(const Instance& other) const {
  if (edges_.size() != other.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& a = edges_[i];
    const Edge& b = other.edges_[i];
    if (a.name != b.name || a.cost != b.cost || names_[a.tail] != other.names_[b.tail] ||
        names_[a.head] != other.names_[b.head])
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// EdgeSubset

EdgeSubset::EdgeSubset(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

EdgeSubset EdgeSubset::full(std::size_t universe) {
  EdgeSubset s(universe);
  for (EdgeId e = 0; e < universe; ++e) s.insert(e);
  return s;
}

EdgeSubset EdgeSubset::of(std::size_t universe, std::span<const EdgeId> members) {
  EdgeSubset s(universe);
  for (EdgeId e : members) s.insert(e);
  return s;
}

void EdgeSubset::insert(EdgeId e) {
  if (e >= universe_) throw Error(ErrorCode::InvalidArgument, "edge id " + std::to_string(e) + " out of range");
  words_[e / 64] |= std::uint64_t{1} << (e % 64);
}

void EdgeSubset::erase(EdgeId e) {
  if (e < universe_) words_[e / 64] &= ~(std::uint64_t{1} << (e % 64));
}

EdgeSubset EdgeSubset::without(EdgeId e) const {
  EdgeSubset s = *this;
  s.erase(e);
  return s;
}

EdgeSubset EdgeSubset::minus(const EdgeSubset& other) const {
  EdgeSubset s = *this;
  for (std::size_t w = 0; w < s.words_.size() && w < other.words_.size(); ++w) s.words_[w] &= ~other.words_[w];
  return s;
}

bool EdgeSubset::is_subset_of(const EdgeSubset& other) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t theirs = w < other.words_.size() ? other.words_[w] : 0;
    if ((words_[w] & ~theirs) != 0) return false;
  }
  return true;
}

std::size_t EdgeSubset::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<EdgeId> EdgeSubset::members() const {
  std::vector<EdgeId> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      int b = std::countr_zero(bits);
      out.push_back(static_cast<EdgeId>(w * 64 + static_cast<std::size_t>(b)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t EdgeSubset::hash() const {
  std::size_t h = universe_ * 0x9e3779b97f4a7c15ULL;
  for (auto w : words_) h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

// ---------------------------------------------------------------------------
// TreePolicy

namespace {

// Walks every vertex's choice chain; returns false if some chain cycles.
bool reaches_target(const Instance& inst, const std::vector<EdgeId>& choice) {
  enum : std::uint8_t { kUnseen, kActive, kDone };
  std::vector<std::uint8_t> state(choice.size(), kUnseen);
  state[inst.target()] = kDone;
  std::vector<VertexId> chain;
  for (VertexId start = 0; start < choice.size(); ++start) {
    VertexId v = start;
    chain.clear();
    while (state[v] == kUnseen) {
      state[v] = kActive;
      chain.push_back(v);
      v = inst.edge(choice[v]).head;
    }
    if (state[v] == kActive) return false;
    for (VertexId u : chain) state[u] = kDone;
  }
  return true;
}

}  // namespace

TreePolicy TreePolicy::from_edges(const Instance& inst, std::span<const EdgeId> edges) {
  TreePolicy tree;
  tree.choice_.assign(inst.vertex_count(), kNoEdge);
  for (EdgeId e : edges) {
    if (e >= inst.m()) throw Error(ErrorCode::InvalidTree, "edge id " + std::to_string(e) + " out of range");
    VertexId tail = inst.edge(e).tail;
    if (tree.choice_[tail] != kNoEdge)
      throw Error(ErrorCode::InvalidTree, "two edges chosen at vertex '" + inst.vertex_name(tail) + "'");
    tree.choice_[tail] = e;
  }
  for (VertexId v = 0; v < inst.vertex_count(); ++v) {
    if (v != inst.target() && tree.choice_[v] == kNoEdge)
      throw Error(ErrorCode::InvalidTree, "no edge chosen at vertex '" + inst.vertex_name(v) + "'");
  }
  if (!reaches_target(inst, tree.choice_))
    throw Error(ErrorCode::NotATree, "choices " + format_edge_set(inst, edges) + " contain a cycle");
  return tree;
}

bool TreePolicy::uses(EdgeId e) const {
  return std::find(choice_.begin(), choice_.end(), e) != choice_.end();
}

std::vector<EdgeId> TreePolicy::edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e : choice_)
    if (e != kNoEdge) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

EdgeSubset TreePolicy::as_subset(std::size_t universe) const {
  EdgeSubset s(universe);
  for (EdgeId e : choice_)
    if (e != kNoEdge) s.insert(e);
  return s;
}

TreePolicy replace_choice(const Instance& inst, const TreePolicy& tree, EdgeId e) {
  TreePolicy out = tree;
  out.choice_.at(inst.edge(e).tail) = e;
  return out;
}

// ---------------------------------------------------------------------------
// Validation

Instance validate_instance(Instance raw) {
  const Instance& inst = raw;
  if (!inst.out_edges(inst.target()).empty()) {
    const Edge& e = inst.edge(inst.out_edges(inst.target()).front());
    throw Error(ErrorCode::TargetHasOutEdges, "target '" + inst.vertex_name(inst.target()) + "' has out-edge '" + e.name + "'");
  }
  for (VertexId v = 0; v < inst.vertex_count(); ++v) {
    if (v != inst.target() && inst.out_edges(v).empty())
      throw Error(ErrorCode::DanglingVertex, "vertex '" + inst.vertex_name(v) + "' has no outgoing edge");
  }

  // Bellman-Ford from a virtual source joined to every vertex at cost 0. With
  // no negative cycle the distances settle within |V| - 1 rounds; any update in
  // round |V| exposes one.
  const std::size_t nv = inst.vertex_count();
  std::vector<Cost> dist(nv, 0);
  std::vector<EdgeId> pred(nv, kNoEdge);
  VertexId updated = 0;
  bool changed = false;
  for (std::size_t round = 0; round < nv; ++round) {
    changed = false;
    // Relax "tail -> head": a path starting at tail continues through head.
    // Distances here are from-vertex path costs, so relax in the reverse sense.
    for (const Edge& e : inst.edges()) {
      if (dist[e.head] + e.cost < dist[e.tail]) {
        dist[e.tail] = dist[e.head] + e.cost;
        pred[e.tail] = e.id;
        updated = e.tail;
        changed = true;
      }
    }
    if (!changed) break;
  }
  if (changed) {
    VertexId v = updated;
    for (std::size_t i = 0; i < nv && pred[v] != kNoEdge; ++i) v = inst.edge(pred[v]).head;
    if (pred[v] == kNoEdge) throw Error(ErrorCode::NegativeCycle, "negative cycle (no witness recovered)");
    std::vector<EdgeId> cycle;
    VertexId u = v;
    do {
      cycle.push_back(pred[u]);
      u = inst.edge(pred[u]).head;
    } while (u != v);
    std::string witness;
    for (EdgeId e : cycle) witness += (witness.empty() ? "" : " -> ") + inst.edge(e).name;
    throw Error(ErrorCode::NegativeCycle, "negative cycle " + witness);
  }
  return raw;
}

// ---------------------------------------------------------------------------
// Distances, improvement, pivot

DistanceMap tree_distances(const Instance& inst, const TreePolicy& tree) {
  const std::size_t nv = inst.vertex_count();
  if (tree.vertex_count() != nv) throw Error(ErrorCode::NotATree, "tree does not match instance");
  enum : std::uint8_t { kUnseen, kActive, kDone };
  std::vector<std::uint8_t> state(nv, kUnseen);
  DistanceMap out{std::vector<Cost>(nv, 0)};
  state[inst.target()] = kDone;
  std::vector<VertexId> chain;
  for (VertexId start = 0; start < nv; ++start) {
    VertexId v = start;
    chain.clear();
    while (state[v] == kUnseen) {
      if (tree.choice(v) == kNoEdge)
        throw Error(ErrorCode::NotATree, "vertex '" + inst.vertex_name(v) + "' has no chosen edge");
      state[v] = kActive;
      chain.push_back(v);
      v = inst.edge(tree.choice(v)).head;
    }
    if (state[v] == kActive) throw Error(ErrorCode::NotATree, "choices cycle through '" + inst.vertex_name(v) + "'");
    // Unwind the chain in reverse topological order.
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const Edge& e = inst.edge(tree.choice(*it));
      out.dist[*it] = e.cost + out.dist[e.head];
      state[*it] = kDone;
    }
  }
  return out;
}

bool improves(const Instance& inst, const DistanceMap& dist, EdgeId e) {
  const Edge& edge = inst.edge(e);
  return edge.cost + dist[edge.head] < dist[edge.tail];
}

bool improves(const Instance& inst, const TreePolicy& tree, EdgeId e) {
  return improves(inst, tree_distances(inst, tree), e);
}

TreePolicy pivot(const Instance& inst, const TreePolicy& tree, EdgeId e) {
  if (!improves(inst, tree, e))
    throw Error(ErrorCode::NotImproving, "edge '" + inst.edge(e).name + "' does not improve the tree");
  return replace_choice(inst, tree, e);
}

// ---------------------------------------------------------------------------
// Optimal trees

namespace {

constexpr Cost kUnreachable = std::numeric_limits<Cost>::max();

std::vector<Cost> subgraph_distances(const Instance& inst, const EdgeSubset& facets) {
  const std::size_t nv = inst.vertex_count();
  std::vector<Cost> dist(nv, kUnreachable);
  dist[inst.target()] = 0;
  const auto members = facets.members();
  for (std::size_t round = 0; round + 1 < nv; ++round) {
    bool changed = false;
    for (EdgeId id : members) {
      const Edge& e = inst.edge(id);
      if (dist[e.head] == kUnreachable) continue;
      Cost through = e.cost + dist[e.head];
      if (through < dist[e.tail]) {
        dist[e.tail] = through;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return dist;
}

}  // namespace

TreePolicy optimal_tree(const Instance& inst, const EdgeSubset& facets) {
  const std::size_t nv = inst.vertex_count();
  const auto dist = subgraph_distances(inst, facets);
  for (VertexId v = 0; v < nv; ++v) {
    if (dist[v] == kUnreachable)
      throw Error(ErrorCode::NoTreeInSubset, "vertex '" + inst.vertex_name(v) + "' cannot reach the target within " +
                                                 format_edge_set(inst, facets));
  }
  // Attach vertices to the settled region along tight edges, layer by layer,
  // taking the smallest tight edge id. Layering keeps zero-cost tight cycles
  // out of the tree.
  std::vector<EdgeId> chosen;
  std::vector<bool> settled(nv, false);
  settled[inst.target()] = true;
  std::size_t remaining = nv - 1;
  const auto members = facets.members();
  while (remaining > 0) {
    std::vector<std::pair<VertexId, EdgeId>> layer;
    for (VertexId v = 0; v < nv; ++v) {
      if (settled[v]) continue;
      for (EdgeId id : inst.out_edges(v)) {
        if (!facets.contains(id)) continue;
        const Edge& e = inst.edge(id);
        if (settled[e.head] && e.cost + dist[e.head] == dist[v]) {
          layer.emplace_back(v, id);
          break;
        }
      }
    }
    if (layer.empty()) throw Error(ErrorCode::NoTreeInSubset, "no tight tree in " + format_edge_set(inst, facets));
    for (auto [v, id] : layer) {
      settled[v] = true;
      chosen.push_back(id);
      --remaining;
    }
  }
  return TreePolicy::from_edges(inst, chosen);
}

bool optimum_is_unique(const Instance& inst, const EdgeSubset& facets, const TreePolicy& optimum) {
  // Another optimal tree exists iff some tight non-tree edge can be swapped in
  // without closing a cycle (pick the last differing vertex on the other
  // tree's path to the target).
  const auto dist = tree_distances(inst, optimum);
  for (EdgeId id : facets.members()) {
    if (optimum.uses(id)) continue;
    const Edge& e = inst.edge(id);
    if (e.cost + dist[e.head] != dist[e.tail]) continue;
    bool closes_cycle = false;
    for (VertexId v = e.head; v != inst.target(); v = inst.edge(optimum.choice(v)).head) {
      if (v == e.tail) {
        closes_cycle = true;
        break;
      }
    }
    if (!closes_cycle) return false;
  }
  return true;
}

TreePolicy unique_optimal_tree(const Instance& inst, const EdgeSubset& facets) {
  TreePolicy best = optimal_tree(inst, facets);
  if (!optimum_is_unique(inst, facets, best))
    throw Error(ErrorCode::NonGenericInstance, "optimal tree within " + format_edge_set(inst, facets) + " is not unique");
  return best;
}

bool tree_within(const TreePolicy& tree, const EdgeSubset& facets) {
  for (EdgeId e : tree.edges())
    if (!facets.contains(e)) return false;
  return true;
}

std::string format_edge_set(const Instance& inst, std::span<const EdgeId> edges) {
  std::string out = "{";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i != 0) out += ",";
    out += inst.edge(edges[i]).name;
  }
  return out + "}";
}

std::string format_edge_set(const Instance& inst, const EdgeSubset& edges) {
  auto members = edges.members();
  return format_edge_set(inst, std::span<const EdgeId>(members));
}

}  // namespace rfacet
