#include "percolab/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <string_view>

#include "percolab/error.hpp"

namespace percolab {

namespace {

struct NumberedEdge {
  Edge edge;
  std::size_t line;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_failure(std::size_t line, const std::string& why) {
  throw Error(Errc::parse_error, "line " + std::to_string(line) + ": " + why);
}

std::uint64_t parse_id(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    parse_failure(line, "expected a non-negative vertex id, got '" + std::string(token) + "'");
  if (value >= std::numeric_limits<Vertex>::max()) parse_failure(line, "vertex id too large");
  return value;
}

// "# n=<N>" with optional spaces.
std::optional<std::uint64_t> header_count(std::string_view comment, std::size_t line) {
  comment = trim(comment);
  if (!comment.starts_with("n=")) return std::nullopt;
  return parse_id(trim(comment.substr(2)), line);
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::vector<NumberedEdge> edges;
  std::optional<std::uint64_t> declared;
  std::uint64_t max_id = 0;
  bool any = false;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    std::string_view content = text;
    if (const auto hash = content.find('#'); hash != std::string_view::npos) {
      if (auto n = header_count(content.substr(hash + 1), line)) {
        if (declared) parse_failure(line, "repeated '# n=' header");
        declared = n;
      }
      content = content.substr(0, hash);
    }
    content = trim(content);
    if (content.empty()) continue;
    const auto split = content.find_first_of(" \t");
    if (split == std::string_view::npos) parse_failure(line, "expected two vertex ids");
    const auto first = content.substr(0, split);
    const auto second = trim(content.substr(split));
    if (second.find_first_of(" \t") != std::string_view::npos) parse_failure(line, "expected exactly two vertex ids");
    const auto u = parse_id(first, line);
    const auto v = parse_id(second, line);
    if (u == v) throw Error(Errc::non_simple, "line " + std::to_string(line) + ": self-loop at vertex " + std::to_string(u));
    edges.push_back({{static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))}, line});
    max_id = std::max({max_id, u, v});
    any = true;
  }
  if (in.bad()) throw Error(Errc::io_error, "read failure");

  std::uint64_t n = any ? max_id + 1 : 0;
  if (declared) {
    if (any && max_id >= *declared)
      throw Error(Errc::parse_error, "vertex id " + std::to_string(max_id) + " exceeds declared n=" + std::to_string(*declared));
    n = *declared;
  }

  std::stable_sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return a.edge < b.edge; });
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i].edge == edges[i - 1].edge)
      throw Error(Errc::non_simple, "line " + std::to_string(edges[i].line) + ": duplicate edge (" +
                                        std::to_string(edges[i].edge.u) + ", " + std::to_string(edges[i].edge.v) +
                                        ") first seen on line " + std::to_string(edges[i - 1].line));
  std::vector<Edge> plain;
  plain.reserve(edges.size());
  for (const auto& e : edges) plain.push_back(e.edge);
  return Graph::from_edges(n, plain);
}

void write_edge_list(const Graph& g, std::ostream& out, const std::vector<std::string>& comments) {
  out << "# n=" << g.num_vertices() << '\n';
  for (const auto& c : comments) out << "# " << c << '\n';
  for (Vertex u = 0; u < g.num_vertices(); ++u)
    for (Vertex v : g.neighbors(u))
      if (u < v) out << u << ' ' << v << '\n';
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
  return read_edge_list(in);
}

void save_edge_list(const Graph& g, const std::filesystem::path& path, const std::vector<std::string>& comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  write_edge_list(g, out, comments);
  out.flush();
  if (!out) throw Error(Errc::io_error, "write failure on " + path.string());
}

}  // namespace percolab
