#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "percolab/graph.hpp"

namespace percolab {

/// Erdős–Rényi G(n, p). Pairs are visited by geometric skipping
/// (Batagelj–Brandes): starting from (v=1, w=-1), each step draws
/// r = rng.uniform() and advances w by 1 + floor(log(1-r) / log(1-p)),
/// carrying overflow into v; (w, v) with w < v is an edge. The generator is
/// `Rng(seed)`.
struct GnpSpec {
  std::size_t n = 0;
  double p = 0;
  std::uint64_t seed = 0;
};

struct CompleteSpec {
  std::size_t n = 0;
};

/// Paley graph on Z_q: x ~ y iff x - y is a nonzero square mod q.
/// q must be a prime with q ≡ 1 (mod 4).
struct PaleySpec {
  std::uint64_t q = 0;
};

/// G(n, p) followed by controlled irregularity.
///
/// ceil(vertex_fraction * n) distinct vertices are drawn; each, in draw
/// order, either gains or loses (fair coin) max(1, round(degree_shift * n * p))
/// incident edges to/from uniformly random partners. Randomness comes from
/// `Rng(derive_seed(seed, 1))`; the base graph uses `seed`.
struct PerturbedSpec {
  std::size_t n = 0;
  double p = 0;
  std::uint64_t seed = 0;
  double vertex_fraction = 0.01;
  double degree_shift = 0.1;
};

/// Star with center 0 and leaves 1..n-1.
struct StarSpec {
  std::size_t n = 0;
};

/// Path 0-1-...-(n-1).
struct PathSpec {
  std::size_t n = 0;
};

/// Cycle on n >= 3 vertices.
struct CycleSpec {
  std::size_t n = 0;
};

struct FileSpec {
  std::filesystem::path path;
};

using GeneratorSpec =
    std::variant<GnpSpec, CompleteSpec, PaleySpec, PerturbedSpec, StarSpec, PathSpec, CycleSpec, FileSpec>;

struct GenerateLimits {
  /// Refuse to build graphs whose (expected) edge count exceeds this.
  std::size_t max_edges = 50'000'000;
};

/// Throws InvalidSpec when the parameters do not fit the kind.
void validate(const GeneratorSpec& spec);

/// Deterministic in the spec. Throws InvalidSpec or ResourceLimit, and the
/// edge-list errors for FileSpec.
Graph generate(const GeneratorSpec& spec, const GenerateLimits& limits = {});

/// Parses "kind:key=value,key=value", e.g. "gnp:n=1000,p=0.1,seed=7",
/// "paley:q=13", "complete:n=5", "perturbed:n=500,p=0.1,seed=1,fraction=0.01",
/// "file:graph.txt". Throws InvalidSpec.
GeneratorSpec parse_generator_spec(std::string_view text);

/// Inverse of `parse_generator_spec`; used for provenance lines.
std::string describe(const GeneratorSpec& spec);

bool is_prime(std::uint64_t q) noexcept;

}  // namespace percolab
