#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "percolab/codegree.hpp"
#include "percolab/graph.hpp"

namespace percolab {

/// Measured degree/co-degree statistics of a graph against a target
/// density p and slacks (a_n, b_n), with the three assumption verdicts:
///
///   A1: min degree    > n p   - a_n
///   A2: max co-degree < n p^2 + b_n
///   A3: max degree    < n p   + a_n
///
/// All inequalities are strict; ties fail. When the co-degree maximum was
/// sampled, `a2` means "not falsified" rather than "holds".
struct PseudoRandomProfile {
  std::size_t n = 0;
  double p = 0;
  double a_n = 0;
  double b_n = 0;
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  std::size_t max_codegree = 0;
  Vertex codegree_u = 0;
  Vertex codegree_v = 0;
  CoDegreeMode codegree_mode = CoDegreeMode::exact;
  bool a1 = false;
  bool a2 = false;
  bool a3 = false;

  bool exact() const noexcept { return codegree_mode == CoDegreeMode::exact; }
  /// A1 and A2 (and A3 when `with_a3`).
  bool certifies(bool with_a3 = true) const noexcept { return a1 && a2 && (a3 || !with_a3); }
};

bool a1_holds(std::size_t min_degree, std::size_t n, double p, double a_n) noexcept;
bool a2_holds(std::size_t max_codegree, std::size_t n, double p, double b_n) noexcept;
bool a3_holds(std::size_t max_degree, std::size_t n, double p, double a_n) noexcept;

/// p must lie in (0, 1] (p = 1 describes complete graphs); throws
/// InvalidArgument otherwise.
PseudoRandomProfile certify(const Graph& g, double p, double a_n, double b_n, const CoDegreeOptions& options = {});

/// Recomputes the verdicts of `profile` for new slacks without re-measuring.
PseudoRandomProfile with_slacks(PseudoRandomProfile profile, double a_n, double b_n) noexcept;

struct Slacks {
  double a_n = 0;
  double b_n = 0;
};

/// Tightest slacks for which A1, A2 and A3 all hold strictly: the raw
/// distances from n p and n p^2 plus the smallest margin that makes the
/// strict comparisons pass in floating point. Throws
/// SampledModeUnavailable when the co-degree maximum cannot be exact.
Slacks estimate_slacks(const Graph& g, double p, const CoDegreeOptions& options = {});

/// Convenience: `certify` at the slacks from `estimate_slacks`, measuring once.
PseudoRandomProfile tight_profile(const Graph& g, double p, const CoDegreeOptions& options = {});

// ---------------------------------------------------------------------------
// Hereditary degree condition: max_{v in U} d(v, U) < (1 + beta) p |U| for
// every U with |U| >= 0.9 n. Checked by falsification only.

struct HdOptions {
  double beta = 0.1;
  double subset_fraction = 0.9;
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  /// Number of highest-degree vertices around which an adversarial U is grown.
  std::size_t adversarial_roots = 3;
  std::size_t adversarial_rounds = 3;
  unsigned threads = 0;
};

struct HdWitness {
  /// Seed of the sampled subset, or empty when U was adversarial.
  std::optional<std::uint64_t> subset_seed;
  /// Root of the adversarial subset, when U was adversarial.
  std::optional<Vertex> adversarial_root;
  Vertex vertex = 0;
  std::size_t degree_in_subset = 0;
  std::size_t subset_size = 0;
};

struct HdReport {
  double p = 0;
  double beta = 0;
  double subset_fraction = 0;
  std::size_t subset_size = 0;
  std::size_t trials = 0;
  std::size_t adversarial_subsets = 0;
  double worst_ratio = 0;
  bool falsified = false;
  /// Subset attaining `worst_ratio` (present whenever any subset was examined).
  std::optional<HdWitness> witness;
};

/// Uniform subsets of size floor(subset_fraction * n) from per-trial seeds
/// derive_seed(seed, trial), plus adversarial subsets. For a root t the
/// adversarial U starts as V and, `adversarial_rounds` times, is reset to t
/// together with the |U| - 1 other vertices ranked highest by
/// (neighbor of t, degree into the current U), ties to the lower index.
/// `falsified` is sound (the witness is a genuine violation); a report
/// that is not falsified is only evidence.
///
/// Throws SubsetTooSmall when subset_fraction < 0.9 and InvalidArgument
/// for a fraction above 1 or zero trials.
HdReport hd_check(const Graph& g, double p, const HdOptions& options = {});

/// Rebuilds the 0/1 membership mask of the subset a witness came from.
std::vector<char> hd_subset(const Graph& g, const HdWitness& witness, const HdOptions& options);

/// d(v, U) for every v in V. `members` is a 0/1 mask of U.
std::vector<std::uint32_t> degrees_into(const Graph& g, const std::vector<char>& members);

}  // namespace percolab
