#pragma once
// Shared fixtures and brute-force oracles for the test suites. Nothing here
// calls the engines it is used to check.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "doctest.h"
#include "rfacet/comptree.hpp"
#include "rfacet/errors.hpp"
#include "rfacet/facet.hpp"
#include "rfacet/graph.hpp"
#include "rfacet/instance_io.hpp"
#include "rfacet/instances.hpp"
#include "rfacet/rational.hpp"

namespace rfacet::testing {

// Code of the rfacet::Error thrown by fn; fails the test if none is thrown.
inline ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an rfacet::Error");
  return ErrorCode::InvalidArgument;
}

inline const Instance& errata() {
  static const Instance inst = validate_instance(load_instance(RFACET_FIXTURE));
  return inst;
}

inline TreePolicy cube_tree(const Instance& inst, std::string_view bits) {
  return CubeEncoding::of(inst).decode(inst, bits);
}

inline EdgeId edge(const Instance& inst, std::string_view name) { return inst.find_edge(name).value(); }

inline Instance make(std::string target, std::vector<EdgeSpec> edges) {
  return Instance(std::move(target), edges);
}

// Every TreePolicy whose edges lie in `facets`, by trying all combinations of
// one out-edge per vertex.
inline std::vector<TreePolicy> all_trees(const Instance& inst, const EdgeSubset& facets) {
  std::vector<std::vector<EdgeId>> options(inst.vertex_count());
  for (VertexId v = 1; v < inst.vertex_count(); ++v)
    for (EdgeId e : inst.out_edges(v))
      if (facets.contains(e)) options[v].push_back(e);
  std::vector<TreePolicy> out;
  std::vector<EdgeId> pick;
  std::function<void(VertexId)> rec = [&](VertexId v) {
    if (v == inst.vertex_count()) {
      try {
        out.push_back(TreePolicy::from_edges(inst, pick));
      } catch (const std::exception&) {
      }
      return;
    }
    for (EdgeId e : options[v]) {
      pick.push_back(e);
      rec(v + 1);
      pick.pop_back();
    }
  };
  rec(1);
  return out;
}

// Distances by walking each vertex's path to the target.
inline std::vector<Cost> walk_distances(const Instance& inst, const TreePolicy& tree) {
  std::vector<Cost> d(inst.vertex_count(), 0);
  for (VertexId v = 1; v < inst.vertex_count(); ++v) {
    Cost sum = 0;
    for (VertexId at = v; at != inst.target();) {
      const Edge& e = inst.edge(tree.choice(at));
      sum += e.cost;
      at = e.head;
    }
    d[v] = sum;
  }
  return d;
}

// The tree whose distances are pointwise minimal, if one is.
inline std::optional<TreePolicy> brute_force_optimum(const Instance& inst, const EdgeSubset& facets) {
  auto trees = all_trees(inst, facets);
  for (const auto& cand : trees) {
    auto dc = walk_distances(inst, cand);
    bool minimal = true;
    for (const auto& other : trees) {
      auto dother = walk_distances(inst, other);
      for (std::size_t v = 0; v < dc.size(); ++v)
        if (dother[v] < dc[v]) minimal = false;
    }
    if (minimal) return cand;
  }
  return std::nullopt;
}

// UniformIndexSource that replays a script of draws and records the bounds it
// was asked for; advance() moves to the next script like an odometer.
class ScriptedSource {
 public:
  std::uint64_t below(std::uint64_t bound) {
    if (pos_ == script_.size()) script_.push_back(0);
    if (bounds_.size() == pos_) bounds_.push_back(bound);
    bounds_[pos_] = bound;
    return script_[pos_++];
  }
  Rational probability() const {
    Rational p(1);
    for (std::size_t i = 0; i < pos_; ++i) p /= static_cast<long long>(bounds_[i]);
    return p;
  }
  // Prepares the next branch; false once every branch has been visited.
  bool advance() {
    script_.resize(pos_);
    bounds_.resize(pos_);
    while (!script_.empty() && script_.back() + 1 >= bounds_.back()) {
      script_.pop_back();
      bounds_.pop_back();
    }
    pos_ = 0;
    if (script_.empty()) return false;
    ++script_.back();
    return true;
  }

 private:
  std::vector<std::uint64_t> script_;
  std::vector<std::uint64_t> bounds_;
  std::size_t pos_ = 0;
};

// Calls visit(result, probability) for every branch of Random-Facet's
// decision tree.
inline void for_each_rf_branch(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree,
                               const std::function<void(const RunResult&, const Rational&)>& visit) {
  ScriptedSource source;
  do {
    RunResult r = run_random_facet(inst, facets, tree, source);
    visit(r, source.probability());
  } while (source.advance());
}

inline Rational rf_brute_force(const Instance& inst, const EdgeSubset& facets, const TreePolicy& tree) {
  Rational sum(0);
  for_each_rf_branch(inst, facets, tree,
                     [&](const RunResult& r, const Rational& p) { sum += p * static_cast<long long>(r.pivot_count); });
  return sum;
}

// Random instances small enough for every exhaustive check.
inline std::vector<Instance> small_random_instances(std::size_t count, std::size_t max_edges, std::uint64_t seed0) {
  std::vector<Instance> out;
  for (std::uint64_t seed = seed0; out.size() < count; ++seed) {
    const std::size_t n = 1 + seed % 3;
    const std::size_t deg = 1 + (seed / 3) % 3;
    if (n * deg > max_edges) continue;
    out.push_back(random_instance(n, deg, 10, seed));
  }
  return out;
}

inline Rational leaf_mass(const CompTree& tree) {
  Rational sum(0);
  for (std::size_t id : tree.leaves()) sum += tree.node(id).reach;
  return sum;
}

}  // namespace rfacet::testing
