#include "rfacet/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "rfacet/errors.hpp"

namespace rfacet {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Instance parse_instance(std::string_view text) {
  std::optional<std::string> target;
  std::vector<EdgeSpec> edges;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (tokens[0] == "target") {
      if (target) parse_fail(line_no, "second target line");
      if (!edges.empty()) parse_fail(line_no, "target must precede all edges");
      if (tokens.size() != 2) parse_fail(line_no, "expected 'target <name>'");
      target = std::string(tokens[1]);
    } else if (tokens[0] == "edge") {
      if (!target) parse_fail(line_no, "edge before target line");
      if (tokens.size() != 5) parse_fail(line_no, "expected 'edge <id> <tail> <head> <integer-cost>'");
      Cost cost = 0;
      auto cost_token = tokens[4];
      auto [ptr, ec] = std::from_chars(cost_token.data(), cost_token.data() + cost_token.size(), cost);
      if (ec != std::errc() || ptr != cost_token.data() + cost_token.size())
        parse_fail(line_no, "malformed cost '" + std::string(cost_token) + "'");
      std::string name(tokens[1]);
      if (!seen.insert(name).second) parse_fail(line_no, "duplicate edge id '" + name + "'");
      edges.push_back({name, std::string(tokens[2]), std::string(tokens[3]), cost});
    } else {
      parse_fail(line_no, "unknown directive '" + std::string(tokens[0]) + "'");
    }
    if (end == text.size()) break;
  }
  if (!target) throw Error(ErrorCode::ParseError, "line 1: missing 'target' line");
  return Instance(*target, edges);
}

std::string format_instance(const Instance& inst) {
  std::ostringstream out;
  out << "target " << inst.vertex_name(inst.target()) << '\n';
  for (const auto& e : inst.edges())
    out << "edge " << e.name << ' ' << inst.vertex_name(e.tail) << ' ' << inst.vertex_name(e.head) << ' ' << e.cost
        << '\n';
  return out.str();
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::WriteError, "cannot open '" + path.string() + "' for writing");
  out << format_instance(inst);
  out.flush();
  if (!out) throw Error(ErrorCode::WriteError, "write to '" + path.string() + "' failed");
}

}  // namespace rfacet
