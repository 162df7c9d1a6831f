#include "percolab/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "percolab/error.hpp"
#include "percolab/percolator.hpp"

namespace percolab {

class GraphBuilder {
 public:
  static Graph build(std::size_t n, std::span<const Edge> edges) {
    if (n > std::numeric_limits<Vertex>::max())
      throw Error(Errc::resource_limit, "vertex count " + std::to_string(n) + " exceeds 32-bit labels");
    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto [u, v] = edges[i];
      if (u >= n || v >= n)
        throw Error(Errc::vertex_out_of_range, "edge " + std::to_string(i) + " (" + std::to_string(u) + ", " +
                                                   std::to_string(v) + ") with n=" + std::to_string(n));
      if (u == v) throw Error(Errc::non_simple, "self-loop at vertex " + std::to_string(u));
      ++g.offsets_[u + 1];
      ++g.offsets_[v + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.adjacency_.resize(2 * edges.size());
    std::vector<std::uint64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto [u, v] : edges) {
      g.adjacency_[fill[u]++] = v;
      g.adjacency_[fill[v]++] = u;
    }
    for (std::size_t v = 0; v < n; ++v) {
      auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
      auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
      if (!std::is_sorted(first, last)) std::sort(first, last);
      if (auto dup = std::adjacent_find(first, last); dup != last)
        throw Error(Errc::non_simple, "duplicate edge (" + std::to_string(v) + ", " + std::to_string(*dup) + ")");
    }
    return g;
  }
};

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) { return GraphBuilder::build(n, edges); }

bool Graph::adjacent(Vertex u, Vertex v) const noexcept {
  const auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

void Graph::check_vertex(Vertex v) const {
  if (v >= num_vertices())
    throw Error(Errc::vertex_out_of_range,
                "vertex " + std::to_string(v) + " with n=" + std::to_string(num_vertices()));
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < num_vertices(); ++u)
    for (Vertex v : neighbors(u))
      if (u < v) out.push_back({u, v});
  return out;
}

std::size_t degree(const Graph& g, Vertex v) {
  g.check_vertex(v);
  return g.degree_of(v);
}

std::size_t intersection_size(std::span<const Vertex> a, std::span<const Vertex> b) noexcept {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::size_t co_degree(const Graph& g, Vertex u, Vertex v) {
  g.check_vertex(u);
  g.check_vertex(v);
  if (u == v) throw Error(Errc::same_vertex, "co-degree of vertex " + std::to_string(u) + " with itself");
  return intersection_size(g.neighbors(u), g.neighbors(v));
}

DegreeRange degree_range(const Graph& g) noexcept {
  const std::size_t n = g.num_vertices();
  if (n == 0) return {};
  DegreeRange r{g.degree_of(0), g.degree_of(0)};
  for (Vertex v = 1; v < n; ++v) {
    r.min = std::min(r.min, g.degree_of(v));
    r.max = std::max(r.max, g.degree_of(v));
  }
  return r;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<Vertex> all(g.num_vertices());
  std::iota(all.begin(), all.end(), Vertex{0});
  return oracle_components(g, all);
}

}  // namespace percolab
