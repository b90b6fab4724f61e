#include "rfacet/errata.hpp"

#include <algorithm>

#include "rfacet/errors.hpp"
#include "rfacet/exact.hpp"
#include "rfacet/instances.hpp"
#include "rfacet/linear_extensions.hpp"

namespace rfacet {

std::string format_check(const Check& check) {
  return "CHECK " + check.name + " expected=" + check.expected + " got=" + check.got + (check.pass ? " PASS" : " FAIL");
}

CompTreeOptions compact_view() {
  CompTreeOptions options;
  options.collapse_deterministic_calls = true;
  options.leaving = LeavingEdgePolicy::DropEverywhere;
  return options;
}

std::vector<std::pair<EdgeId, Rational>> branch_probabilities(const CompTree& tree,
                                                              const std::function<bool(std::size_t)>& where) {
  for (std::size_t id = 0; id < tree.nodes().size(); ++id) {
    const CompNode& node = tree.node(id);
    if (node.kind != NodeKind::Choice || !where(id)) continue;
    std::vector<std::pair<EdgeId, Rational>> out;
    for (std::size_t child : node.children) out.emplace_back(tree.node(child).edge, tree.node(child).probability);
    return out;
  }
  return {};
}

namespace {

EdgeId edge_named(const Instance& inst, std::string_view name) {
  auto e = inst.find_edge(name);
  if (!e) throw Error(ErrorCode::InvalidArgument, "instance has no edge named " + std::string(name));
  return *e;
}

// Id of the choice over {x1, y0} below the root's z0 branch.
std::optional<std::size_t> find_choice_after_z0(const Instance& inst, const CompTree& tree) {
  const EdgeId z0 = edge_named(inst, "z0");
  std::vector<EdgeId> wanted{edge_named(inst, "x1"), edge_named(inst, "y0")};
  std::sort(wanted.begin(), wanted.end());
  for (std::size_t id = 0; id < tree.nodes().size(); ++id) {
    if (tree.node(id).kind != NodeKind::Choice || tree.node(id).candidates != wanted) continue;
    for (std::size_t step : tree.path_to(id)) {
      const CompNode& n = tree.node(step);
      if (n.kind == NodeKind::Pick && n.parent == tree.root() && n.edge == z0) return id;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<Rational, Rational>> choice_after_z0(const Instance& inst, const CompTree& tree) {
  auto id = find_choice_after_z0(inst, tree);
  if (!id) return std::nullopt;
  const EdgeId x1 = edge_named(inst, "x1");
  std::pair<Rational, Rational> out;
  for (std::size_t child : tree.node(*id).children)
    (tree.node(child).edge == x1 ? out.first : out.second) = tree.node(child).probability;
  return out;
}

std::vector<Check> errata_checks(const Instance& inst) {
  std::vector<Check> checks;
  auto check = [&](std::string name, std::string expected, const std::function<std::string()>& observe) {
    Check c{std::move(name), std::move(expected), "", false};
    try {
      c.got = observe();
      c.pass = c.got == c.expected;
    } catch (const std::exception& ex) {
      c.got = "error:" + std::string(ex.what());
      std::replace(c.got.begin(), c.got.end(), ' ', '_');
    }
    checks.push_back(std::move(c));
  };
  auto yes = [](bool b) { return std::string(b ? "true" : "false"); };

  const EdgeSubset all = EdgeSubset::full(inst.m());
  auto tree = [&](std::string_view bits) { return CubeEncoding::of(inst).decode(inst, bits); };
  auto f = [&](std::string_view bits, Rule rule, LeavingEdgePolicy leaving = LeavingEdgePolicy::Keep) {
    ExactOptions options;
    options.leaving = leaving;
    return rule == Rule::RandomFacet ? expected_pivots_rf(inst, all, tree(bits), options)
                                     : expected_pivots_rf_star(inst, all, tree(bits), options);
  };
  auto frac = [](const Rational& r) { return to_fraction_string(r); };

  check("instance_valid", "true", [&] {
    (void)validate_instance(inst);
    return yes(true);
  });
  check("generic", "true", [&] { return yes(genericity_check(inst)); });
  check("optimum", "000", [&] { return CubeEncoding::of(inst).bits_of(optimal_tree(inst, all)); });
  check("orientation_sink", "000", [&] {
    auto view = orientation_view(inst);
    return view.encoding().bits_of(view.sink());
  });
  check("unique_sink_every_face", "true", [&] {
    auto view = orientation_view(inst);
    return yes(view.is_acyclic() && view.every_face_has_unique_sink());
  });
  for (const char* from : {"001", "111"}) {
    check(std::string("paths_") + from + "_to_000", "3", [&] {
      auto view = orientation_view(inst);
      const auto& enc = view.encoding();
      return std::to_string(view.count_paths(enc.index_of(from), enc.index_of("000")));
    });
  }

  check("f_001", "7/3", [&] { return frac(f("001", Rule::RandomFacet)); });
  check("fstar_001", "29/12", [&] { return frac(f("001", Rule::RandomFacetStar)); });
  check("f_111", "11/3", [&] { return frac(f("111", Rule::RandomFacet)); });
  check("fstar_111", "43/12", [&] { return frac(f("111", Rule::RandomFacetStar)); });
  check("fstar_above_f_001", "true",
        [&] { return yes(f("001", Rule::RandomFacetStar) > f("001", Rule::RandomFacet)); });
  check("fstar_below_f_111", "true",
        [&] { return yes(f("111", Rule::RandomFacetStar) < f("111", Rule::RandomFacet)); });

  auto precedes = [&](std::initializer_list<std::pair<const char*, const char*>> pairs) {
    ConstraintSet cs;
    for (auto [a, b] : pairs) cs.add(edge_named(inst, a), edge_named(inst, b));
    return cs;
  };
  check("orders_001_path", "150", [&] {
    return std::to_string(count_linear_extensions(inst.m(), precedes({{"z0", "x1"}, {"z0", "y1"}, {"y0", "x1"}})));
  });
  check("orders_111_path", "150", [&] {
    return std::to_string(count_linear_extensions(inst.m(), precedes({{"z0", "x0"}, {"z0", "y0"}, {"x1", "y0"}})));
  });
  check("orders_001_path_probability", "5/24", [&] {
    const auto n = count_linear_extensions(inst.m(), precedes({{"z0", "x1"}, {"z0", "y1"}, {"y0", "x1"}}));
    return frac(Rational(n, factorial(static_cast<unsigned>(inst.m()))));
  });

  auto after_z0 = [&](Rule rule) {
    auto t = build_comptree(inst, all, tree("001"), rule, compact_view());
    auto p = choice_after_z0(inst, t);
    if (!p) throw Error(ErrorCode::InvalidArgument, "no choice over {x1,y0} after z0");
    return *p;
  };
  check("rfstar_pick_y0_after_z0", "5/8", [&] { return frac(after_z0(Rule::RandomFacetStar).second); });
  check("rfstar_pick_x1_after_z0", "3/8", [&] { return frac(after_z0(Rule::RandomFacetStar).first); });
  check("rf_pick_y0_after_z0", "1/2", [&] { return frac(after_z0(Rule::RandomFacet).second); });
  check("rf_pick_x1_after_z0", "1/2", [&] { return frac(after_z0(Rule::RandomFacet).first); });
  check("rfstar_path_z0_y0", "5/24", [&] {
    auto t = build_comptree(inst, all, tree("001"), Rule::RandomFacetStar, compact_view());
    auto id = find_choice_after_z0(inst, t);
    if (!id) throw Error(ErrorCode::InvalidArgument, "no choice over {x1,y0} after z0");
    for (std::size_t child : t.node(*id).children)
      if (t.node(child).edge == edge_named(inst, "y0")) return frac(t.node(child).reach);
    throw Error(ErrorCode::InvalidArgument, "y0 is never picked after z0");
  });
  check("comptree_rfstar_expectation_001", "29/12", [&] {
    return frac(build_comptree(inst, all, tree("001"), Rule::RandomFacetStar, compact_view()).expected_pivots());
  });

  check("posterior_1_before_3", "2/3",
        [&] { return frac(conditional_order_probability(3, ConstraintSet{{1, 2}}, ConstraintSet{{0, 2}})); });

  check("leaving_edge_dropped_f_001", "7/3",
        [&] { return frac(f("001", Rule::RandomFacet, LeavingEdgePolicy::DropAtRoot)); });
  check("leaving_edge_dropped_fstar_001", "29/12",
        [&] { return frac(f("001", Rule::RandomFacetStar, LeavingEdgePolicy::DropAtRoot)); });
  return checks;
}

}  // namespace rfacet
