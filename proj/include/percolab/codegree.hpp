#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "percolab/graph.hpp"

namespace percolab {

enum class CoDegreeMode { exact, sampled };

std::string_view to_string(CoDegreeMode mode) noexcept;

/// Tuning for `max_co_degree`.
///
/// Two exact strategies are available: one bitset row per vertex (AND +
/// popcount per pair, n^2 bits of memory, allowed up to `bitset_max_n`), and
/// wedge counting (for each u, count paths u-w-x with x > u; O(n) memory,
/// O(sum of squared degrees) time). The cheaper one is chosen from a work
/// estimate; if even that exceeds `exact_work_cap`, the search falls back to
/// sampling: exact co-degrees of the top `top_fraction` vertices by degree
/// against all others, plus `sample_pairs` uniformly random pairs.
struct CoDegreeOptions {
  std::size_t bitset_max_n = 20000;
  double exact_work_cap = 4e10;
  std::size_t sample_pairs = 200000;
  double top_fraction = 0.01;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct MaxCoDegree {
  std::size_t value = 0;
  Vertex u = 0;  // u < v; lexicographically smallest attaining pair found
  Vertex v = 0;
  CoDegreeMode mode = CoDegreeMode::exact;
  std::size_t pairs_examined = 0;
};

/// Whether the exact strategies fit within `options`.
bool exact_co_degree_feasible(const Graph& g, const CoDegreeOptions& options = {});

/// Max over unordered pairs of |N(u) ∩ N(v)|. Throws GraphTooSmall if n < 2.
/// In exact mode the value is the true maximum; in sampled mode it is a
/// lower bound on it.
MaxCoDegree max_co_degree(const Graph& g, const CoDegreeOptions& options = {});

}  // namespace percolab
