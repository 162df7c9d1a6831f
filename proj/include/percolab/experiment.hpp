#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "percolab/certifier.hpp"
#include "percolab/graph.hpp"

namespace percolab {

/// `count` consecutive seeds starting at `base`.
std::vector<std::uint64_t> seed_range(std::uint64_t base, std::size_t count);

/// 4 / eps^2, the default constant in front of (ln n)^2.
double default_log_constant(double epsilon) noexcept;

struct SweepConfig {
  /// Density setting the threshold scale: rho = c / (n p).
  double p = 0;
  std::vector<double> multipliers;
  std::vector<std::uint64_t> seeds;
  double epsilon = 0.3;
  /// Replace rho >= 1 by 1 instead of throwing RhoOutOfRange.
  bool clip_rho = false;
  /// Constant K in L2 <= K (ln n)^2; 4 / eps^2 when empty.
  std::optional<double> log_constant;
  unsigned threads = 0;
};

struct SweepRun {
  double c = 0;
  double rho = 0;
  std::uint64_t seed = 0;
  std::size_t retained = 0;
  std::size_t l1 = 0;
  std::size_t l2 = 0;

  friend bool operator==(const SweepRun&, const SweepRun&) = default;
};

/// Per-multiplier statistics, each a plain function of the rows with that c.
struct SweepAggregate {
  double c = 0;
  double rho = 0;
  std::size_t runs = 0;
  double mean_l1 = 0;
  double median_l1 = 0;
  double mean_l2 = 0;
  double median_l2 = 0;
  double mean_retained = 0;
  /// Fraction of runs with L1 >= giant_threshold.
  double giant_fraction = 0;
  /// Fraction of runs with L2 <= K (ln n)^2.
  double l2_within_fraction = 0;
};

struct SweepResult {
  std::string graph;
  std::size_t n = 0;
  double p = 0;
  double epsilon = 0;
  double log_constant = 0;
  /// ceil(eps / p).
  std::size_t giant_threshold = 0;
  /// K (ln n)^2.
  double l2_bound = 0;
  PseudoRandomProfile profile;
  /// Ordered by multiplier (grid order), then seed (config order).
  std::vector<SweepRun> runs;
  std::vector<SweepAggregate> aggregates;
  /// Smallest grid multiplier whose giant frequency is at least 1/2.
  std::optional<double> c_star;
};

/// Runs the DFS exploration for every (multiplier, seed). One set of
/// per-vertex uniforms is drawn per seed and shared by all multipliers, so
/// retained sets are nested along increasing c. Rows do not depend on the
/// thread count.
///
/// Throws InvalidArgument for negative or non-finite multipliers, an empty
/// seed list or p outside (0, 1]; RhoOutOfRange when c / (n p) >= 1 and
/// `clip_rho` is off.
SweepResult run_sweep(const Graph& g, const PseudoRandomProfile& profile, const SweepConfig& config,
                      std::string graph_description = {});

/// Recomputes the aggregates and c* of `result` from its rows.
std::vector<SweepAggregate> aggregate_runs(const std::vector<SweepRun>& runs, std::size_t giant_threshold,
                                           double l2_bound);
std::optional<double> estimate_threshold(const std::vector<SweepAggregate>& aggregates);

/// Header `c,rho,seed,retained,L1,L2` and one row per run.
void emit_csv(const SweepResult& result, std::ostream& out);
void emit_csv(const SweepResult& result, const std::filesystem::path& path);
void emit_json(const SweepResult& result, std::ostream& out);
void emit_json(const SweepResult& result, const std::filesystem::path& path);

// ---------------------------------------------------------------------------

enum class TrialKind { supercritical, subcritical, hd_uniqueness };

std::string_view to_string(TrialKind kind) noexcept;

struct TrialOptions {
  double epsilon = 0.3;
  std::vector<std::uint64_t> seeds;
  std::optional<double> log_constant;
  /// Supercritical only: require A3 and report the L2 fractions.
  bool assert_uniqueness = true;
  /// Supercritical and HD: check the outer-complement bound on a connected
  /// ceil(eps / p)-subset of the largest component of every run.
  bool check_outer_complement = true;
  /// HD trial: beta defaults to eps^5.
  std::optional<double> beta;
  HdOptions hd;
  unsigned threads = 0;
};

struct TrialRun {
  std::uint64_t seed = 0;
  std::size_t retained = 0;
  std::size_t l1 = 0;
  std::size_t l2 = 0;
  /// Present when the outer-complement check ran for this run.
  std::optional<bool> outer_complement_passed;
  double outer_complement_size = 0;
  double outer_complement_bound = 0;

  friend bool operator==(const TrialRun&, const TrialRun&) = default;
};

struct TrialSummary {
  TrialKind kind = TrialKind::supercritical;
  std::size_t n = 0;
  double p = 0;
  double epsilon = 0;
  double rho = 0;
  double log_constant = 0;
  std::size_t giant_threshold = 0;
  /// K (ln n)^2 and (ln n)^2.
  double log_bound = 0;
  double log_squared = 0;
  std::vector<TrialRun> runs;

  double giant_fraction = 0;           // L1 >= ceil(eps / p)
  double l2_within_fraction = 0;       // L2 <= K (ln n)^2
  double l2_log_squared_fraction = 0;  // L2 <= (ln n)^2
  double l1_within_fraction = 0;       // L1 < K (ln n)^2
  double l1_below_giant_fraction = 0;  // L1 < eps / p
  std::size_t max_l1 = 0;
  double median_l1 = 0;
  double median_l2 = 0;
  /// Runs where the outer-complement check ran, and how many passed.
  std::size_t outer_complement_checked = 0;
  std::size_t outer_complement_passed = 0;

  PseudoRandomProfile profile;
  std::optional<HdReport> hd;
  bool hd_falsified = false;
};

/// rho = (1 + eps) / (n p). Throws NotCertified unless the profile
/// certifies A1, A2 (and A3 when uniqueness is asserted); RhoOutOfRange
/// when rho >= 1.
TrialSummary supercritical_trial(const Graph& g, const PseudoRandomProfile& profile, const TrialOptions& options);

/// rho = (1 - eps) / (n p). Throws NotCertified unless A3 holds.
TrialSummary subcritical_trial(const Graph& g, const PseudoRandomProfile& profile, const TrialOptions& options);

/// Supercritical measurement under A1, A2 and the hereditary degree
/// condition instead of A3. A falsified HD check does not stop the run; it
/// sets `hd_falsified` and keeps the witness in `hd`.
TrialSummary hd_uniqueness_trial(const Graph& g, const PseudoRandomProfile& profile, const TrialOptions& options);

/// Median of a sample (mean of the two middle values for even sizes, 0 when empty).
double median(std::vector<double> values);

}  // namespace percolab
