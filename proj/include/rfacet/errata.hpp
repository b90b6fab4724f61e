#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rfacet/comptree.hpp"
#include "rfacet/graph.hpp"

namespace rfacet {

// One reproduced number: expected and observed values as strings.
struct Check {
  std::string name;
  std::string expected;
  std::string got;
  bool pass = false;
};

// "CHECK <name> expected=<v> got=<v> PASS|FAIL"
std::string format_check(const Check& check);

// Computation-tree view that shows only the choices that matter: calls with a
// single possible pivot sequence are collapsed, and the edge that just left
// the tree is dropped from every second call (it can never re-enter there).
CompTreeOptions compact_view();

// Children of the first Choice node (in node order) satisfying `where`,
// as (picked edge, conditional probability).
std::vector<std::pair<EdgeId, Rational>> branch_probabilities(const CompTree& tree,
                                                              const std::function<bool(std::size_t)>& where);

// In the compact view from `start`: the choice over {x1, y0} that follows
// picking z0 at the root. Returns the probabilities of picking x1 and y0.
std::optional<std::pair<Rational, Rational>> choice_after_z0(const Instance& inst, const CompTree& tree);

// Every quantitative claim about the 3-vertex cube counterexample, evaluated
// on `inst` (expects edges x0..z1). Checks that throw report the error text
// as their observed value and fail.
std::vector<Check> errata_checks(const Instance& inst);

}  // namespace rfacet
