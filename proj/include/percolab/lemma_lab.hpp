#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "percolab/certifier.hpp"
#include "percolab/graph.hpp"
#include "percolab/lemma_report.hpp"

namespace percolab {

/// |N_G(H)|: vertices outside H with at least one neighbor in H.
std::size_t external_neighborhood_size(const Graph& g, std::span<const Vertex> set);

/// |O_G(C)|: vertices neither in C nor adjacent to C.
std::size_t outer_complement_size(const Graph& g, std::span<const Vertex> set);

/// Second-order Bonferroni lower bound on |N_G(H)|:
///   sum_{v in H} deg(v) - sum_{v < v' in H} codeg(v, v') - |H|.
/// May be negative. Throws EmptySet, VertexOutOfRange, or InvalidArgument
/// on a repeated vertex.
long long inclusion_exclusion_lower_bound(const Graph& g, std::span<const Vertex> set);

/// Single-set report: passes iff the lower bound does not exceed |N_G(H)|.
LemmaReport inclusion_exclusion_check(const Graph& g, std::span<const Vertex> set);

// ---------------------------------------------------------------------------

enum class ExpansionMode { exhaustive, sampled };

struct ExpansionOptions {
  std::size_t m = 2;
  double alpha0 = 0.5;
  /// Lower end of the admissible window c < m p <= 1/3.
  double c = 0.027;
  ExpansionMode mode = ExpansionMode::exhaustive;
  /// Refuse exhaustive mode above this many sets.
  double max_combinations = 5e6;
  /// Sampled mode: uniformly random m-sets, plus greedy sets grown from the
  /// `greedy_starts` lowest-degree vertices by repeatedly adding the vertex
  /// that keeps |N_G(H)| smallest.
  std::size_t sampled_sets = 10000;
  std::size_t greedy_starts = 8;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

/// The expansion bound (1 - alpha0) (n p m - n p^2 m^2 / 2).
double expansion_bound(std::size_t n, double p, std::size_t m, double alpha0) noexcept;

/// Checks |N_G(H)| >= expansion_bound for every examined m-set H. In
/// exhaustive mode every m-subset is examined (a proof for this graph);
/// sampled mode only falsifies. The witness is the first violating set in
/// lexicographic order (exhaustive) or examination order (sampled).
///
/// Throws PreconditionViolated unless c < m p <= 1/3, CombinationOverflow
/// when exhaustive mode exceeds `max_combinations`.
LemmaReport expansion_check(const Graph& g, const PseudoRandomProfile& profile, const ExpansionOptions& options);

// ---------------------------------------------------------------------------

/// Right-hand side of the variance bound for d(X, U), X uniform on V:
///   p(1-p)|U| + |U|(a - b)/n + (b/n)|U|^2 + 2(a p / n)|U| - a^2 |U|^2 / n^2.
double variance_bound(std::size_t n, double p, double a_n, double b_n, std::size_t u_size) noexcept;

/// The large-|U| simplification 2 p |U| + (3 b / n) |U|^2.
double variance_remark_bound(std::size_t n, double p, double b_n, std::size_t u_size) noexcept;

/// What A1-A3 imply directly, without dropping any term:
///   [|U|(np + a) + |U|(|U|-1)(np^2 + b)] / n - ((np - a)|U| / n)^2.
double variance_bound_from_assumptions(std::size_t n, double p, double a_n, double b_n, std::size_t u_size) noexcept;

/// Population variance of d(v, U) over v in V, exact: computed from the
/// integer sums S1 = sum d, S2 = sum d^2 as (n S2 - S1^2) / n^2.
double degree_into_variance(const Graph& g, std::span<const Vertex> set);

/// Passes iff the exact variance is at most `variance_bound`. Reports the
/// large-|U| bound in `extra` ("remark_bound", "remark_passed") when
/// 2|U| >= n. Throws AssumptionsNotCertified unless the profile certifies
/// A1, A2 and A3.
LemmaReport variance_bound_check(const Graph& g, std::span<const Vertex> set, const PseudoRandomProfile& profile);

// ---------------------------------------------------------------------------

/// 4 / (alpha p)^2 * (4 p + 12 b).
double xi_bound(double p, double b_n, double alpha) noexcept;

/// Vertices v of V with d(v, U) >= (1 + alpha) p |U|.
std::vector<Vertex> high_degree_set(const Graph& g, std::span<const Vertex> set, double p, double alpha);

/// Passes iff |Xi| <= xi_bound. Throws USmall when 2|U| < n, SlackTooLarge
/// when a_n > alpha p n / 2, AssumptionsNotCertified unless A1-A3 hold.
LemmaReport xi_count_check(const Graph& g, std::span<const Vertex> set, const PseudoRandomProfile& profile,
                           double alpha);

// ---------------------------------------------------------------------------

/// l_n = a_n / n + (eps / 2) b_n / (n p^2).
double outer_complement_ln(std::size_t n, double p, double a_n, double b_n, double epsilon) noexcept;

/// n (1 - eps + eps^2 / 2 + eps l_n).
double outer_complement_bound(std::size_t n, double p, double a_n, double b_n, double epsilon) noexcept;

/// n (1 - eps + eps^2 + eps l_n).
double outer_complement_statement_bound(std::size_t n, double p, double a_n, double b_n, double epsilon) noexcept;

/// Passes iff |O_G(C)| <= outer_complement_bound; the eps^2 variant is
/// reported in `extra` ("statement_bound", "statement_passed"). C must be
/// connected (NotConnected) with |C| within 1 of ceil(eps / p)
/// (SizeMismatch); the profile must certify A1 and A2.
LemmaReport outer_complement_check(const Graph& g, std::span<const Vertex> set, const PseudoRandomProfile& profile,
                                   double epsilon);

/// Up to `size` vertices reached by BFS from `root` (neighbors in ascending
/// order), optionally confined to `within`. The result induces a connected
/// subgraph and is sorted.
std::vector<Vertex> grow_connected_set(const Graph& g, Vertex root, std::size_t size,
                                       std::span<const Vertex> within = {});

/// Whether `set` induces a connected subgraph (the empty set does not).
bool induces_connected(const Graph& g, std::span<const Vertex> set);

}  // namespace percolab
