#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "percolab/graph.hpp"
#include "percolab/lemma_report.hpp"

namespace percolab {

/// Source of the retention decisions fed to the DFS.
///
/// `uniform_threshold`: vertex v is retained iff u_v < rho, where u_v is the
/// v-th draw of `Rng(seed).uniform()`. The uniforms are indexed by vertex,
/// not by query position, so runs with the same seed and rho1 <= rho2 give
/// nested retained sets.
///
/// `explicit_bits`: bit i decides the i-th query of the run (query order,
/// exactly as the exploration consumes its Bernoulli sequence). Meant for
/// test injection; needs exactly n bits.
struct BernoulliStream {
  enum class Mode { uniform_threshold, explicit_bits };

  Mode mode = Mode::uniform_threshold;
  double rho = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> bits;

  static BernoulliStream uniform(double rho, std::uint64_t seed) { return {Mode::uniform_threshold, rho, seed, {}}; }
  static BernoulliStream explicit_sequence(std::vector<std::uint8_t> bits) {
    return {Mode::explicit_bits, 0, 0, std::move(bits)};
  }
};

/// Query-index interval [start, end) during which the stack held one component.
struct Epoch {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Epoch&, const Epoch&) = default;
};

struct PercolationOutcome {
  std::vector<Vertex> retained;                 // sorted
  std::vector<Vertex> rejected;                 // sorted
  std::vector<std::vector<Vertex>> components;  // each sorted, ordered by smallest vertex
  std::vector<Epoch> epochs;                    // epochs[i] revealed components[i]
  std::vector<Vertex> query_order;              // vertex asked at each query index
  std::size_t bits_consumed = 0;
  double rho = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const PercolationOutcome&, const PercolationOutcome&) = default;
};

/// The per-vertex uniforms of `BernoulliStream::uniform(rho, seed)`.
std::vector<double> vertex_uniforms(std::size_t n, std::uint64_t seed);

/// Depth-first exploration of the site-percolated graph.
///
/// Vertices are in one of four states: untouched (T), on the stack (U),
/// finished (S) or rejected (W). With an empty stack the smallest untouched
/// vertex is queried; otherwise the untouched neighbors of the stack top are
/// queried in ascending order, a retained neighbor being pushed at once, and
/// a top without untouched neighbors is finished. Each vertex is queried
/// exactly once. Every stretch between two empty-stack moments (an epoch)
/// reveals one component of G[R].
///
/// Throws StreamLengthMismatch when explicit bits do not number n, and
/// InvalidArgument for rho outside [0, 1].
PercolationOutcome dfs_percolate(const Graph& g, const BernoulliStream& stream);

/// Same exploration driven by precomputed per-vertex uniforms (sweeps reuse
/// one draw across many rho). `uniforms.size()` must equal n.
PercolationOutcome dfs_percolate(const Graph& g, std::span<const double> uniforms, double rho, std::uint64_t seed = 0);

/// Components of G[retained] by union-find over the induced edges; each
/// component sorted, ordered by smallest vertex. Duplicates in `retained`
/// are ignored. Throws VertexOutOfRange.
std::vector<std::vector<Vertex>> oracle_components(const Graph& g, std::span<const Vertex> retained);

struct LargestTwo {
  std::size_t first = 0;
  std::size_t second = 0;
};

LargestTwo largest_two(const PercolationOutcome& outcome) noexcept;
LargestTwo largest_two(const std::vector<std::vector<Vertex>>& components) noexcept;

// ---------------------------------------------------------------------------
// Binomial prefix-sum tails of an i.i.d. Bernoulli(rho) sequence of length n,
// with rho = (1 + eps) / (n p), i.e. p = (1 + eps) / (n rho):
//   (1) sum_{i <= eps^3 n} Y_i <= 2 eps^3 / p
//   (2) sum_{i <= eps n}   Y_i <= 2 eps / p
//   (3) for all eps^3 n <= t <= eps n: sum_{i <= t} Y_i >= (1 + 3 eps / 4) t / (n p)

struct BinomialTailVerdict {
  bool item1 = true;
  bool item2 = true;
  bool item3 = true;
  /// First t at which item (3) fails, when it does.
  std::size_t item3_first_failure = 0;
};

/// Evaluates the three items on one stream, indexed from 1. `stream` must
/// cover at least floor(eps n) entries. Throws InvalidEpsilon when eps^3 n < 1.
BinomialTailVerdict evaluate_binomial_tails(std::span<const std::uint8_t> stream, std::size_t n, double rho,
                                            double epsilon);

struct BinomialTailOptions {
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  /// Largest per-item failure frequency still counted as a pass.
  double tolerance = 0.0;
  unsigned threads = 0;
};

/// Runs `trials` synthetic streams, stream k drawn from
/// Rng(derive_seed(seed, k)) with Y_i = [uniform < rho]. Reports per-item
/// failure frequencies in `extra` ("item1_failure_frequency", ...).
LemmaReport binomial_stream_check(std::size_t n, double rho, double epsilon, const BinomialTailOptions& options = {});

/// The Bernoulli stream of trial `trial`, first `length` entries.
std::vector<std::uint8_t> binomial_stream(std::uint64_t seed, std::size_t trial, double rho, std::size_t length);

}  // namespace percolab
