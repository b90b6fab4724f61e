#include "rfacet/instances.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "rfacet/errors.hpp"
#include "rfacet/exact.hpp"
#include "rfacet/rng.hpp"

namespace rfacet {

// ---------------------------------------------------------------------------
// CubeEncoding

CubeEncoding CubeEncoding::of(const Instance& inst) {
  CubeEncoding enc;
  std::vector<bool> seen(inst.vertex_count(), false);
  for (const Edge& e : inst.edges()) {
    if (seen[e.tail]) continue;
    seen[e.tail] = true;
    auto out = inst.out_edges(e.tail);
    if (out.size() != 2)
      throw Error(ErrorCode::NotCubeShaped, "vertex '" + inst.vertex_name(e.tail) + "' has " +
                                                std::to_string(out.size()) + " out-edges, expected 2");
    enc.axes_.push_back(e.tail);
    enc.edges_.push_back({std::min(out[0], out[1]), std::max(out[0], out[1])});
  }
  if (enc.axes_.size() != inst.n())
    throw Error(ErrorCode::NotCubeShaped, "some non-target vertex has no out-edges");
  if (enc.axes_.size() > 20) throw Error(ErrorCode::NotCubeShaped, "more than 20 axes");
  for (std::uint32_t v = 0; v < enc.vertex_count(); ++v) {
    try {
      (void)enc.decode(inst, v);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NotATree) throw;
      throw Error(ErrorCode::NotCubeShaped, "choice " + enc.bits_of(v) + " is not a tree");
    }
  }
  return enc;
}

TreePolicy CubeEncoding::decode(const Instance& inst, std::uint32_t index) const {
  std::vector<EdgeId> chosen;
  for (std::size_t j = 0; j < axes_.size(); ++j) chosen.push_back(edges_[j][(index >> j) & 1u]);
  return TreePolicy::from_edges(inst, chosen);
}

TreePolicy CubeEncoding::decode(const Instance& inst, std::string_view bits) const {
  return decode(inst, index_of(bits));
}

std::uint32_t CubeEncoding::index_of(std::string_view bits) const {
  if (bits.size() != axes_.size())
    throw Error(ErrorCode::InvalidArgument, "bit string '" + std::string(bits) + "' has the wrong length");
  std::uint32_t index = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] != '0' && bits[j] != '1')
      throw Error(ErrorCode::InvalidArgument, "bit string '" + std::string(bits) + "' must contain only 0 and 1");
    if (bits[j] == '1') index |= std::uint32_t{1} << j;
  }
  return index;
}

std::uint32_t CubeEncoding::index_of(const TreePolicy& tree) const {
  std::uint32_t index = 0;
  for (std::size_t j = 0; j < axes_.size(); ++j) {
    EdgeId e = tree.choice(axes_[j]);
    if (e == edges_[j][1])
      index |= std::uint32_t{1} << j;
    else if (e != edges_[j][0])
      throw Error(ErrorCode::InvalidArgument, "tree does not belong to this cube");
  }
  return index;
}

std::string CubeEncoding::bits_of(std::uint32_t index) const {
  std::string bits(axes_.size(), '0');
  for (std::size_t j = 0; j < axes_.size(); ++j)
    if ((index >> j) & 1u) bits[j] = '1';
  return bits;
}

std::string CubeEncoding::bits_of(const TreePolicy& tree) const { return bits_of(index_of(tree)); }

// ---------------------------------------------------------------------------
// OrientationView

OrientationView orientation_view(const Instance& inst) {
  CubeEncoding enc = CubeEncoding::of(inst);
  std::vector<std::uint32_t> improving(enc.vertex_count(), 0);
  for (std::uint32_t v = 0; v < enc.vertex_count(); ++v) {
    const DistanceMap dist = tree_distances(inst, enc.decode(inst, v));
    for (std::size_t j = 0; j < enc.dimension(); ++j) {
      const unsigned bit = (v >> j) & 1u;
      if (improves(inst, dist, enc.axis_edge(j, 1 - bit))) improving[v] |= std::uint32_t{1} << j;
    }
  }
  for (std::uint32_t v = 0; v < enc.vertex_count(); ++v) {
    for (std::size_t j = 0; j < enc.dimension(); ++j) {
      const std::uint32_t w = v ^ (std::uint32_t{1} << j);
      const bool forward = (improving[v] >> j) & 1u;
      const bool backward = (improving[w] >> j) & 1u;
      if (forward == backward)
        throw Error(ErrorCode::NonGenericInstance,
                    "cube edge " + enc.bits_of(v) + " - " + enc.bits_of(w) + " is not oriented in exactly one direction");
    }
  }
  return OrientationView(std::move(enc), std::move(improving));
}

bool OrientationView::is_acyclic() const {
  // Kahn's algorithm over the 2^n vertices.
  const std::uint32_t count = encoding_.vertex_count();
  std::vector<std::size_t> indegree(count, 0);
  for (std::uint32_t v = 0; v < count; ++v)
    for (std::size_t j = 0; j < dimension(); ++j)
      if ((improving_[v] >> j) & 1u) ++indegree[v ^ (std::uint32_t{1} << j)];
  std::vector<std::uint32_t> ready;
  for (std::uint32_t v = 0; v < count; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::uint32_t removed = 0;
  while (!ready.empty()) {
    std::uint32_t v = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t j = 0; j < dimension(); ++j)
      if ((improving_[v] >> j) & 1u)
        if (--indegree[v ^ (std::uint32_t{1} << j)] == 0) ready.push_back(v ^ (std::uint32_t{1} << j));
  }
  return removed == count;
}

std::vector<std::uint32_t> OrientationView::face_sinks(std::uint32_t fixed_mask, std::uint32_t fixed_values) const {
  std::vector<std::uint32_t> sinks;
  for (std::uint32_t v = 0; v < encoding_.vertex_count(); ++v) {
    if ((v & fixed_mask) != (fixed_values & fixed_mask)) continue;
    if ((improving_[v] & ~fixed_mask) == 0) sinks.push_back(v);
  }
  return sinks;
}

bool OrientationView::every_face_has_unique_sink() const {
  const std::uint32_t all = encoding_.vertex_count();
  for (std::uint32_t mask = 0; mask < all; ++mask) {
    // Enumerate the values of the fixed axes as submasks of `mask`.
    std::uint32_t values = mask;
    for (;;) {
      if (face_sinks(mask, values).size() != 1) return false;
      if (values == 0) break;
      values = (values - 1) & mask;
    }
  }
  return true;
}

std::uint32_t OrientationView::sink() const {
  auto sinks = face_sinks(0, 0);
  if (sinks.size() != 1) throw Error(ErrorCode::NonGenericInstance, "cube has " + std::to_string(sinks.size()) + " sinks");
  return sinks.front();
}

std::uint64_t OrientationView::count_paths(std::uint32_t from, std::uint32_t to) const {
  if (!is_acyclic()) throw Error(ErrorCode::InvalidArgument, "path counting needs an acyclic orientation");
  std::vector<std::optional<std::uint64_t>> memo(encoding_.vertex_count());
  std::function<std::uint64_t(std::uint32_t)> paths = [&](std::uint32_t v) -> std::uint64_t {
    if (v == to) return 1;
    if (memo[v]) return *memo[v];
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < dimension(); ++j)
      if ((improving_[v] >> j) & 1u) total += paths(v ^ (std::uint32_t{1} << j));
    memo[v] = total;
    return total;
  };
  return paths(from);
}

// ---------------------------------------------------------------------------
// Genericity

bool genericity_check(const Instance& inst) {
  const std::size_t m = inst.m();
  if (m > kMaxExhaustiveGenericityEdges)
    throw Error(ErrorCode::TooLargeForExhaustiveCheck,
                std::to_string(m) + " edges; exhaustive check limited to " +
                    std::to_string(kMaxExhaustiveGenericityEdges));
  const std::size_t nv = inst.vertex_count();
  const VertexId target = inst.target();

  std::vector<std::vector<EdgeId>> options(nv);
  std::vector<std::size_t> digit(nv);
  std::vector<EdgeId> choice(nv, kNoEdge);
  std::vector<Cost> dist(nv);
  std::vector<std::uint8_t> state(nv);
  std::vector<VertexId> chain;
  std::vector<Cost> best(nv);

  // Distances of the current `choice`, or false if it contains a cycle.
  auto evaluate = [&]() {
    std::fill(state.begin(), state.end(), 0);
    state[target] = 2;
    dist[target] = 0;
    for (VertexId start = 0; start < nv; ++start) {
      VertexId v = start;
      chain.clear();
      while (state[v] == 0) {
        state[v] = 1;
        chain.push_back(v);
        v = inst.edge(choice[v]).head;
      }
      if (state[v] == 1) return false;
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        const Edge& e = inst.edge(choice[*it]);
        dist[*it] = e.cost + dist[e.head];
        state[*it] = 2;
      }
    }
    return true;
  };

  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << m); ++subset) {
    bool feasible = true;
    for (VertexId v = 0; v < nv; ++v) {
      options[v].clear();
      if (v == target) continue;
      for (EdgeId e : inst.out_edges(v))
        if ((subset >> e) & 1u) options[v].push_back(e);
      if (options[v].empty()) feasible = false;
    }
    if (!feasible) continue;

    std::vector<std::vector<Cost>> trees;
    std::fill(digit.begin(), digit.end(), 0);
    for (;;) {
      for (VertexId v = 0; v < nv; ++v)
        if (v != target) choice[v] = options[v][digit[v]];
      if (evaluate()) trees.push_back(dist);
      VertexId v = 0;
      for (; v < nv; ++v) {
        if (v == target) continue;
        if (++digit[v] < options[v].size()) break;
        digit[v] = 0;
      }
      if (v == nv) break;
    }
    if (trees.empty()) continue;

    best = trees.front();
    for (const auto& d : trees)
      for (VertexId v = 0; v < nv; ++v) best[v] = std::min(best[v], d[v]);
    const auto optimal = std::count(trees.begin(), trees.end(), best);
    if (optimal != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Random instances

Instance random_instance(std::size_t n, std::size_t out_degree, Cost cost_bound, std::uint64_t seed) {
  if (n == 0 || out_degree == 0) throw Error(ErrorCode::InvalidArgument, "n and out_degree must be positive");
  if (cost_bound < 0) throw Error(ErrorCode::InvalidArgument, "cost_bound must be non-negative");
  RandomSource rng(seed);
  const Cost low = -(cost_bound / 2);
  const auto span = static_cast<std::uint64_t>(cost_bound - low + 1);
  constexpr int kRetries = 10000;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    std::vector<EdgeSpec> edges;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < out_degree; ++k) {
        // Heads range over t and the other n - 1 vertices.
        std::size_t pick = rng.below(n);
        std::string head = pick == 0 ? "t" : "v" + std::to_string(pick < i ? pick : pick + 1);
        Cost cost = low + static_cast<Cost>(rng.below(span));
        edges.push_back({"v" + std::to_string(i) + "_" + std::to_string(k), "v" + std::to_string(i), head, cost});
      }
    }
    try {
      Instance inst = validate_instance(Instance("t", edges));
      if (inst.n() != n) continue;  // some vertex never appeared
      (void)optimal_tree(inst, EdgeSubset::full(inst.m()));
      if (inst.m() <= kRandomGenericityEdges && !genericity_check(inst)) continue;
      return inst;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NegativeCycle && err.code() != ErrorCode::NoTreeInSubset) throw;
    }
  }
  throw Error(ErrorCode::GenerationFailedAfterRetries,
              "no valid generic instance after " + std::to_string(kRetries) + " attempts");
}

// ---------------------------------------------------------------------------
// The three-vertex counterexample

bool matches_errata_values(const Instance& inst) {
  try {
    (void)validate_instance(inst);
    if (!genericity_check(inst)) return false;
    const OrientationView view = orientation_view(inst);
    const CubeEncoding& enc = view.encoding();
    if (enc.dimension() != 3) return false;
    for (const char* name : {"x0", "x1", "y0", "y1", "z0", "z1"})
      if (!inst.find_edge(name)) return false;
    if (view.sink() != enc.index_of("000")) return false;
    if (view.count_paths(enc.index_of("001"), enc.index_of("000")) != 3) return false;
    if (view.count_paths(enc.index_of("111"), enc.index_of("000")) != 3) return false;

    const EdgeSubset all = EdgeSubset::full(inst.m());
    const TreePolicy from001 = enc.decode(inst, "001");
    const TreePolicy from111 = enc.decode(inst, "111");
    if (expected_pivots_rf(inst, all, from001) != Rational(7, 3)) return false;
    if (expected_pivots_rf(inst, all, from111) != Rational(11, 3)) return false;
    if (expected_pivots_rf_star(inst, all, from001) != Rational(29, 12)) return false;
    if (expected_pivots_rf_star(inst, all, from111) != Rational(43, 12)) return false;
    return true;
  } catch (const Error&) {
    return false;
  }
}

Instance derive_errata_instance(std::size_t* candidates_examined) {
  const std::array<std::string, 3> vertices{"x", "y", "z"};
  const std::array<std::string, 4> heads{"x", "y", "z", "t"};
  constexpr Cost kMaxCost = 8;

  // head_choices[k] lists admissible heads of edge k (x0, x1, y0, y1, z0, z1).
  std::array<std::vector<std::string>, 6> head_choices;
  for (std::size_t k = 0; k < 6; ++k)
    for (const auto& h : heads)
      if (h != vertices[k / 2]) head_choices[k].push_back(h);

  std::size_t examined = 0;
  std::array<std::size_t, 6> h{};
  for (;;) {
    for (Cost cx = 1; cx <= kMaxCost; ++cx) {
      for (Cost cy = 1; cy <= kMaxCost; ++cy) {
        for (Cost cz = 1; cz <= kMaxCost; ++cz) {
          ++examined;
          const std::array<Cost, 3> cost{cx, cy, cz};
          std::vector<EdgeSpec> edges;
          for (std::size_t k = 0; k < 6; ++k) {
            const std::string& tail = vertices[k / 2];
            edges.push_back({tail + std::to_string(k % 2), tail, head_choices[k][h[k]], k % 2 == 0 ? 0 : cost[k / 2]});
          }
          Instance candidate("t", edges);
          if (matches_errata_values(candidate)) {
            if (candidates_examined) *candidates_examined = examined;
            return candidate;
          }
        }
      }
    }
    // Advance the head odometer with z1 fastest.
    int k = 5;
    for (; k >= 0; --k) {
      if (++h[static_cast<std::size_t>(k)] < head_choices[static_cast<std::size_t>(k)].size()) break;
      h[static_cast<std::size_t>(k)] = 0;
    }
    if (k < 0) break;
  }
  if (candidates_examined) *candidates_examined = examined;
  throw Error(ErrorCode::SearchExhausted, "no candidate in the documented search space reproduces the values");
}

}  // namespace rfacet
