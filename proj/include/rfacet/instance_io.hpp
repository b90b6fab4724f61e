#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rfacet/graph.hpp"

namespace rfacet {

// Line-oriented text format:
//
//   target <name>
//   edge <id> <tail> <head> <integer-cost>
//   ...
//
// '#' starts a comment line; blank lines are ignored. The edge id token is a
// name (e.g. "x0"); dense numeric ids follow the order of the edge lines.
// Parsing does not validate graph invariants; see validate_instance.
Instance parse_instance(std::string_view text);

// Canonical form: the target line followed by one edge line per edge in id
// order, single spaces, '\n' line endings. parse_instance(format_instance(x))
// reproduces x, and canonical files survive load/save byte for byte.
std::string format_instance(const Instance& inst);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

}  // namespace rfacet
