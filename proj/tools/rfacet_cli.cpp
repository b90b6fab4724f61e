// rfacet: command-line front end. Exit codes: 0 ok, 1 a CHECK failed,
// 2 usage or input error.
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "rfacet/comptree.hpp"
#include "rfacet/errata.hpp"
#include "rfacet/errors.hpp"
#include "rfacet/exact.hpp"
#include "rfacet/facet.hpp"
#include "rfacet/instance_io.hpp"
#include "rfacet/instances.hpp"
#include "rfacet/linear_extensions.hpp"
#include "rfacet/montecarlo.hpp"

using namespace rfacet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ' && c != '{' && c != '}') {
      cur += c;
    }
  }
  out.push_back(cur);
  out.erase(std::remove(out.begin(), out.end(), std::string()), out.end());
  return out;
}

// Edge names, or numeric ids when no edge has that name.
std::vector<EdgeId> parse_edge_list(const Instance& inst, const std::string& text) {
  std::vector<EdgeId> out;
  for (const auto& token : split(text, ',')) {
    if (auto e = inst.find_edge(token)) {
      out.push_back(*e);
      continue;
    }
    std::size_t pos = 0;
    unsigned long id = 0;
    try {
      id = std::stoul(token, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != token.size() || id >= inst.m()) throw Error(ErrorCode::InvalidArgument, "unknown edge '" + token + "'");
    out.push_back(static_cast<EdgeId>(id));
  }
  return out;
}

EdgeSubset parse_facets(const Instance& inst, const std::string& text) {
  if (text.empty() || text == "all") return EdgeSubset::full(inst.m());
  return EdgeSubset::of(inst.m(), parse_edge_list(inst, text));
}

// A cube bit string such as 001, or an edge list.
TreePolicy parse_tree(const Instance& inst, const std::string& text) {
  if (!text.empty() && text.find_first_not_of("01") == std::string::npos) {
    try {
      auto enc = CubeEncoding::of(inst);
      if (text.size() == enc.dimension()) return enc.decode(inst, text);
    } catch (const Error&) {
      // not a cube; fall through to edge names
    }
  }
  return TreePolicy::from_edges(inst, parse_edge_list(inst, text));
}

Rule require_rule(const std::string& text) {
  auto rule = parse_rule(text);
  if (!rule) throw Error(ErrorCode::InvalidArgument, "unknown rule '" + text + "' (use rf or rfstar)");
  return *rule;
}

Instance load_valid(const std::string& path) { return validate_instance(load_instance(path)); }

std::string describe_tree(const Instance& inst, const TreePolicy& tree) {
  std::string out = format_edge_set(inst, tree.edges());
  try {
    out = CubeEncoding::of(inst).bits_of(tree) + " " + out;
  } catch (const Error&) {
  }
  return out;
}

// Element names in "a<b,c<d": all numeric tokens are 1-based positions,
// otherwise names are numbered in order of first appearance.
class ElementNames {
 public:
  explicit ElementNames(std::size_t universe) : universe_(universe) {}

  void scan(const std::string& text) {
    for (const auto& pair : split(text, ','))
      for (const auto& token : split(pair, '<'))
        if (std::find(order_.begin(), order_.end(), token) == order_.end()) order_.push_back(token);
  }

  ConstraintSet constraints(const std::string& text) const {
    ConstraintSet cs;
    for (const auto& pair : split(text, ',')) {
      auto parts = split(pair, '<');
      if (parts.size() != 2) throw Error(ErrorCode::InvalidArgument, "constraint '" + pair + "' is not of the form a<b");
      cs.add(index(parts[0]), index(parts[1]));
    }
    return cs;
  }

 private:
  bool numeric() const {
    return std::all_of(order_.begin(), order_.end(), [](const std::string& s) {
      return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
    });
  }

  std::size_t index(const std::string& token) const {
    if (numeric()) {
      const std::size_t v = std::stoul(token);
      if (v < 1 || v > universe_)
        throw Error(ErrorCode::InvalidArgument, "element " + token + " outside 1.." + std::to_string(universe_));
      return v - 1;
    }
    const auto pos = static_cast<std::size_t>(std::find(order_.begin(), order_.end(), token) - order_.begin());
    if (pos >= universe_)
      throw Error(ErrorCode::InvalidArgument, "more distinct names than the " + std::to_string(universe_) + " elements");
    return pos;
  }

  std::size_t universe_;
  std::vector<std::string> order_;
};

struct InstanceArgs {
  std::string file;
  std::string rule = "rf";
  std::string tree;
  std::string facets;
};

void add_instance_args(CLI::App* cmd, InstanceArgs& args, bool with_rule, bool with_tree) {
  cmd->add_option("file", args.file, "instance file")->required();
  cmd->add_option("--facets", args.facets, "edge names or ids (default: all edges)");
  if (with_rule) cmd->add_option("--rule", args.rule, "rf or rfstar")->capture_default_str();
  if (with_tree) cmd->add_option("--tree", args.tree, "start tree: cube bits (001) or edge list")->required();
}

int cmd_solve(const InstanceArgs& args) {
  const Instance inst = load_valid(args.file);
  const EdgeSubset facets = parse_facets(inst, args.facets);
  const TreePolicy tree = optimal_tree(inst, facets);
  const DistanceMap dist = tree_distances(inst, tree);
  std::cout << "tree " << describe_tree(inst, tree) << "\n";
  std::map<std::string, VertexId> by_name;
  for (VertexId v = 0; v < inst.vertex_count(); ++v) by_name.emplace(inst.vertex_name(v), v);
  for (const auto& [name, v] : by_name) {
    const EdgeId e = tree.choice(v);
    std::cout << name << ' ' << (e == kNoEdge ? std::string("-") : inst.edge(e).name) << ' ' << dist[v] << "\n";
  }
  return kExitOk;
}

int cmd_exact(const InstanceArgs& args) {
  const Instance inst = load_valid(args.file);
  const EdgeSubset facets = parse_facets(inst, args.facets);
  const TreePolicy tree = parse_tree(inst, args.tree);
  const Rule rule = require_rule(args.rule);
  const Rational value = rule == Rule::RandomFacet ? expected_pivots_rf(inst, facets, tree)
                                                   : expected_pivots_rf_star(inst, facets, tree);
  std::cout << to_fraction_string(value) << "\n";
  return kExitOk;
}

int cmd_simulate(const InstanceArgs& args, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  const Instance inst = load_valid(args.file);
  const EdgeSubset facets = parse_facets(inst, args.facets);
  const TreePolicy tree = parse_tree(inst, args.tree);
  const Rule rule = require_rule(args.rule);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  std::cout << format_estimate(estimate_expected_pivots(inst, facets, tree, rule, trials, seed, workers)) << "\n";
  return kExitOk;
}

int cmd_comptree(const InstanceArgs& args, const std::string& format, const std::string& view) {
  const Instance inst = load_valid(args.file);
  const EdgeSubset facets = parse_facets(inst, args.facets);
  const TreePolicy tree = parse_tree(inst, args.tree);
  const Rule rule = require_rule(args.rule);
  const CompTreeOptions options = view == "compact" ? compact_view() : CompTreeOptions{};
  const CompTree ct = build_comptree(inst, facets, tree, rule, options);
  std::cout << (format == "dot" ? comptree_to_dot(inst, ct) : comptree_to_text(inst, ct));
  return kExitOk;
}

int cmd_run(const InstanceArgs& args, std::uint64_t seed, const std::string& order) {
  const Instance inst = load_valid(args.file);
  const EdgeSubset facets = parse_facets(inst, args.facets);
  const TreePolicy tree = parse_tree(inst, args.tree);
  const Rule rule = require_rule(args.rule);
  RunResult result;
  if (rule == Rule::RandomFacet) {
    RandomSource rng(seed);
    result = run_random_facet(inst, facets, tree, rng);
  } else {
    std::vector<EdgeId> sigma;
    if (order.empty()) {
      RandomSource rng(seed);
      sigma.resize(inst.m());
      for (EdgeId e = 0; e < inst.m(); ++e) sigma[e] = e;
      for (std::size_t i = sigma.size(); i > 1; --i) std::swap(sigma[i - 1], sigma[rng.below(i)]);
    } else {
      sigma = parse_edge_list(inst, order);
    }
    std::cout << "order " << format_edge_set(inst, sigma) << "\n";
    result = run_random_facet_star(inst, facets, tree, Permutation::from_order(inst.m(), sigma));
  }
  std::cout << format_trace(inst, result.trace);
  std::cout << "pivots=" << result.pivot_count << " final=" << describe_tree(inst, result.final_tree) << "\n";
  return kExitOk;
}

int cmd_perms(bool conditional, std::size_t elements, const std::string& given, const std::string& query) {
  ElementNames names(elements);
  names.scan(given);
  names.scan(query);
  if (!conditional) {
    const ConstraintSet cs = names.constraints(given);
    if (elements <= kMaxBruteForceUniverse)
      std::cout << count_linear_extensions(elements, cs) << "\n";
    else
      std::cout << count_linear_extensions_dp(elements, cs) << "\n";
    return kExitOk;
  }
  std::cout << to_fraction_string(
                   conditional_order_probability(elements, names.constraints(given), names.constraints(query)))
            << "\n";
  return kExitOk;
}

int cmd_verify_errata(const std::string& fixture) {
  Instance inst;
  if (std::filesystem::exists(fixture)) {
    inst = load_instance(fixture);
  } else {
    std::size_t examined = 0;
    inst = derive_errata_instance(&examined);
    std::cout << "NOTE fixture " << fixture << " missing; derived after " << examined << " candidates\n";
  }
  bool all = true;
  for (const Check& c : errata_checks(inst)) {
    std::cout << format_check(c) << "\n";
    all = all && c.pass;
  }
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-Facet / Random-Facet* on single-target shortest-path instances"};
  app.require_subcommand(1);

  InstanceArgs solve_args, exact_args, sim_args, tree_args, run_args;

  auto* solve = app.add_subcommand("solve", "optimal tree and distances");
  add_instance_args(solve, solve_args, false, false);

  auto* exact = app.add_subcommand("exact", "exact expected pivot count as p/q");
  add_instance_args(exact, exact_args, true, true);

  std::uint64_t trials = 100000, seed = 1;
  unsigned workers = 1;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the expected pivot count");
  add_instance_args(simulate, sim_args, true, true);
  simulate->add_option("--trials", trials, "number of runs")->capture_default_str();
  simulate->add_option("--seed", seed, "seed")->capture_default_str();
  simulate->add_option("--workers", workers, "threads (0 = all cores); output does not depend on it")
      ->capture_default_str();

  std::string format = "text", view = "compact";
  auto* comptree = app.add_subcommand("comptree", "probability-annotated computation tree");
  add_instance_args(comptree, tree_args, true, true);
  comptree->add_option("--format", format, "text or dot")
      ->check(CLI::IsMember({"text", "dot"}))
      ->capture_default_str();
  comptree->add_option("--view", view, "full: every choice; compact: collapse single-outcome calls")
      ->check(CLI::IsMember({"full", "compact"}))
      ->capture_default_str();

  std::uint64_t run_seed = 1;
  std::string order;
  auto* run = app.add_subcommand("run", "one run with its pivot trace");
  add_instance_args(run, run_args, true, true);
  run->add_option("--seed", run_seed, "seed for rf, or for drawing the rfstar order")->capture_default_str();
  run->add_option("--order", order, "rfstar order as an edge list (first = highest priority)");

  std::size_t elements = 0;
  std::string given, query;
  auto* perms = app.add_subcommand("perms", "linear extensions of precedence constraints");
  perms->require_subcommand(1);
  auto* count = perms->add_subcommand("count", "number of orders satisfying --given");
  auto* cond = perms->add_subcommand("cond", "P(--query | --given) as p/q");
  for (auto* cmd : {count, cond}) {
    cmd->add_option("--elements", elements, "universe size")->required();
    cmd->add_option("--given", given, "constraints a<b,c<d (names or 1-based positions)");
  }
  cond->add_option("--query", query, "constraints to test")->required();

  std::string fixture = RFACET_DEFAULT_FIXTURE;
  auto* verify = app.add_subcommand("verify-errata", "reproduce every number of the cube counterexample");
  verify->add_option("--fixture", fixture, "instance file (derived when missing)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(solve_args);
    if (*exact) return cmd_exact(exact_args);
    if (*simulate) return cmd_simulate(sim_args, trials, seed, workers);
    if (*comptree) return cmd_comptree(tree_args, format, view);
    if (*run) return cmd_run(run_args, run_seed, order);
    if (*count) return cmd_perms(false, elements, given, query);
    if (*cond) return cmd_perms(true, elements, given, query);
    if (*verify) return cmd_verify_errata(fixture);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
