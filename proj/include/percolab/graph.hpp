#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace percolab {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable undirected simple graph on vertices 0..n-1 in compressed
/// adjacency form. Neighbor lists are strictly ascending and symmetric.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an unordered edge list. Throws NonSimple on a
  /// self-loop or a repeated edge (in either orientation) and
  /// VertexOutOfRange when an endpoint is >= n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return adjacency_.size() / 2; }

  /// Unchecked neighbor list.
  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree_of(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  bool adjacent(Vertex u, Vertex v) const noexcept;

  /// Throws VertexOutOfRange unless v < n.
  void check_vertex(Vertex v) const;

  std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }
  std::span<const Vertex> adjacency() const noexcept { return adjacency_; }

  /// Canonical edge list (u < v, lexicographic).
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend class GraphBuilder;
  std::vector<std::uint64_t> offsets_;
  std::vector<Vertex> adjacency_;
};

/// Degree with range check.
std::size_t degree(const Graph& g, Vertex v);

/// Number of common neighbors of u and v (sorted-list intersection).
/// Throws VertexOutOfRange or SameVertex.
std::size_t co_degree(const Graph& g, Vertex u, Vertex v);

/// Size of the intersection of two ascending ranges.
std::size_t intersection_size(std::span<const Vertex> a, std::span<const Vertex> b) noexcept;

/// Minimum and maximum degree; both 0 for the empty graph.
struct DegreeRange {
  std::size_t min = 0;
  std::size_t max = 0;
};
DegreeRange degree_range(const Graph& g) noexcept;

/// Components of g itself (every vertex retained), canonical order.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

}  // namespace percolab
