#include "percolab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "percolab/error.hpp"
#include "percolab/format.hpp"
#include "percolab/lemma_lab.hpp"
#include "percolab/parallel.hpp"
#include "percolab/percolator.hpp"
#include "percolab/serialize.hpp"

namespace percolab {

std::vector<std::uint64_t> seed_range(std::uint64_t base, std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  std::iota(seeds.begin(), seeds.end(), base);
  return seeds;
}

double default_log_constant(double epsilon) noexcept { return 4.0 / (epsilon * epsilon); }

double median(std::vector<double> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2;
}

namespace {

void check_density(double p) {
  if (!(p > 0 && p <= 1)) throw Error(Errc::invalid_argument, "p must be in (0, 1], got " + format_double(p));
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0 && epsilon < 1))
    throw Error(Errc::invalid_epsilon, "epsilon must be in (0, 1), got " + format_double(epsilon));
}

double log_squared(std::size_t n) {
  const double l = std::log(static_cast<double>(n));
  return l * l;
}

double fraction(std::size_t hits, std::size_t total) {
  return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
}

}  // namespace

std::vector<SweepAggregate> aggregate_runs(const std::vector<SweepRun>& runs, std::size_t giant_threshold,
                                           double l2_bound) {
  std::vector<SweepAggregate> out;
  std::size_t i = 0;
  while (i < runs.size()) {
    std::size_t j = i;
    while (j < runs.size() && runs[j].c == runs[i].c) ++j;
    SweepAggregate a;
    a.c = runs[i].c;
    a.rho = runs[i].rho;
    a.runs = j - i;
    std::vector<double> l1;
    std::vector<double> l2;
    double sum_l1 = 0, sum_l2 = 0, sum_retained = 0;
    std::size_t giants = 0, within = 0;
    for (std::size_t k = i; k < j; ++k) {
      const auto& r = runs[k];
      l1.push_back(static_cast<double>(r.l1));
      l2.push_back(static_cast<double>(r.l2));
      sum_l1 += static_cast<double>(r.l1);
      sum_l2 += static_cast<double>(r.l2);
      sum_retained += static_cast<double>(r.retained);
      if (r.l1 >= giant_threshold) ++giants;
      if (static_cast<double>(r.l2) <= l2_bound) ++within;
    }
    const double count = static_cast<double>(a.runs);
    a.mean_l1 = sum_l1 / count;
    a.mean_l2 = sum_l2 / count;
    a.mean_retained = sum_retained / count;
    a.median_l1 = median(std::move(l1));
    a.median_l2 = median(std::move(l2));
    a.giant_fraction = fraction(giants, a.runs);
    a.l2_within_fraction = fraction(within, a.runs);
    out.push_back(a);
    i = j;
  }
  return out;
}

std::optional<double> estimate_threshold(const std::vector<SweepAggregate>& aggregates) {
  std::optional<double> best;
  for (const auto& a : aggregates)
    if (a.giant_fraction >= 0.5 && (!best || a.c < *best)) best = a.c;
  return best;
}

SweepResult run_sweep(const Graph& g, const PseudoRandomProfile& profile, const SweepConfig& config,
                      std::string graph_description) {
  check_density(config.p);
  check_epsilon(config.epsilon);
  if (config.seeds.empty()) throw Error(Errc::invalid_argument, "sweep needs at least one seed");
  const std::size_t n = g.num_vertices();
  if (n == 0) throw Error(Errc::invalid_argument, "sweep on an empty graph");
  const double np = static_cast<double>(n) * config.p;

  std::vector<double> rhos;
  for (double c : config.multipliers) {
    if (!(std::isfinite(c) && c >= 0))
      throw Error(Errc::invalid_argument, "multiplier must be finite and >= 0, got " + format_double(c));
    double rho = c / np;
    if (rho >= 1) {
      if (!config.clip_rho)
        throw Error(Errc::rho_out_of_range, "c=" + format_double(c) + " gives rho=" + format_double(rho) + " >= 1");
      rho = 1;
    }
    rhos.push_back(rho);
  }

  SweepResult result;
  result.graph = std::move(graph_description);
  result.n = n;
  result.p = config.p;
  result.epsilon = config.epsilon;
  result.log_constant = config.log_constant.value_or(default_log_constant(config.epsilon));
  result.giant_threshold = ceil_count(config.epsilon / config.p);
  result.l2_bound = result.log_constant * log_squared(n);
  result.profile = profile;

  const std::size_t grid = config.multipliers.size();
  const std::size_t seeds = config.seeds.size();
  result.runs.resize(grid * seeds);
  parallel_for(seeds, thread_count(config.threads), [&](std::size_t s) {
    const std::uint64_t seed = config.seeds[s];
    const auto uniforms = vertex_uniforms(n, seed);
    for (std::size_t k = 0; k < grid; ++k) {
      const auto outcome = dfs_percolate(g, uniforms, rhos[k], seed);
      const auto top = largest_two(outcome);
      result.runs[k * seeds + s] = {config.multipliers[k], rhos[k], seed, outcome.retained.size(), top.first,
                                    top.second};
    }
  });

  result.aggregates = aggregate_runs(result.runs, result.giant_threshold, result.l2_bound);
  result.c_star = estimate_threshold(result.aggregates);
  return result;
}

void emit_csv(const SweepResult& result, std::ostream& out) {
  out << "c,rho,seed,retained,L1,L2\n";
  for (const auto& r : result.runs)
    out << format_double(r.c) << ',' << format_double(r.rho) << ',' << r.seed << ',' << r.retained << ',' << r.l1
        << ',' << r.l2 << '\n';
}

namespace {

template <class Write>
void write_file(const std::filesystem::path& path, Write&& write) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot open " + path.string() + " for writing");
  write(out);
  out.flush();
  if (!out) throw Error(Errc::io_error, "write to " + path.string() + " failed");
}

}  // namespace

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { emit_csv(result, out); });
}

void emit_json(const SweepResult& result, std::ostream& out) { out << document(to_json(result)).dump(2) << '\n'; }

void emit_json(const SweepResult& result, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { emit_json(result, out); });
}

// ---------------------------------------------------------------------------

std::string_view to_string(TrialKind kind) noexcept {
  switch (kind) {
    case TrialKind::supercritical: return "supercritical";
    case TrialKind::subcritical: return "subcritical";
    case TrialKind::hd_uniqueness: return "hd_uniqueness";
  }
  return "unknown";
}

namespace {

TrialSummary prepare(TrialKind kind, const Graph& g, const PseudoRandomProfile& profile, const TrialOptions& options,
                     double rho_numerator) {
  check_epsilon(options.epsilon);
  check_density(profile.p);
  if (options.seeds.empty()) throw Error(Errc::invalid_argument, "trial needs at least one seed");
  const std::size_t n = g.num_vertices();
  if (profile.n != n)
    throw Error(Errc::invalid_argument, "profile measured n=" + std::to_string(profile.n) + " but graph has n=" +
                                            std::to_string(n));
  TrialSummary s;
  s.kind = kind;
  s.n = n;
  s.p = profile.p;
  s.epsilon = options.epsilon;
  s.rho = rho_numerator / (static_cast<double>(n) * profile.p);
  if (!(s.rho < 1))
    throw Error(Errc::rho_out_of_range, "rho=" + format_double(s.rho) + " is not below 1");
  s.log_constant = options.log_constant.value_or(default_log_constant(options.epsilon));
  s.giant_threshold = ceil_count(options.epsilon / profile.p);
  s.log_squared = log_squared(n);
  s.log_bound = s.log_constant * s.log_squared;
  s.profile = profile;
  return s;
}

void measure(const Graph& g, TrialSummary& s, const TrialOptions& options, bool check_outer) {
  const std::size_t count = options.seeds.size();
  s.runs.resize(count);
  parallel_for(count, thread_count(options.threads), [&](std::size_t i) {
    const std::uint64_t seed = options.seeds[i];
    const auto outcome = dfs_percolate(g, BernoulliStream::uniform(s.rho, seed));
    TrialRun& run = s.runs[i];
    run.seed = seed;
    run.retained = outcome.retained.size();
    const auto top = largest_two(outcome);
    run.l1 = top.first;
    run.l2 = top.second;
    if (check_outer && top.first >= s.giant_threshold) {
      // The first component of maximum size; C grows from its smallest vertex.
      const auto& giant = *std::max_element(outcome.components.begin(), outcome.components.end(),
                                            [](const auto& a, const auto& b) { return a.size() < b.size(); });
      const auto c = grow_connected_set(g, giant.front(), s.giant_threshold, giant);
      const auto report = outer_complement_check(g, c, s.profile, s.epsilon);
      run.outer_complement_passed = report.passed;
      run.outer_complement_size = report.measured;
      run.outer_complement_bound = report.bound;
    }
  });

  std::size_t giants = 0, l2_within = 0, l2_log = 0, l1_within = 0, l1_small = 0;
  std::vector<double> l1s, l2s;
  for (const auto& r : s.runs) {
    const double l1 = static_cast<double>(r.l1);
    const double l2 = static_cast<double>(r.l2);
    if (r.l1 >= s.giant_threshold) ++giants;
    if (l2 <= s.log_bound) ++l2_within;
    if (l2 <= s.log_squared) ++l2_log;
    if (l1 < s.log_bound) ++l1_within;
    if (r.l1 < s.giant_threshold) ++l1_small;
    s.max_l1 = std::max(s.max_l1, r.l1);
    l1s.push_back(l1);
    l2s.push_back(l2);
    if (r.outer_complement_passed) {
      ++s.outer_complement_checked;
      if (*r.outer_complement_passed) ++s.outer_complement_passed;
    }
  }
  s.giant_fraction = fraction(giants, count);
  s.l2_within_fraction = fraction(l2_within, count);
  s.l2_log_squared_fraction = fraction(l2_log, count);
  s.l1_within_fraction = fraction(l1_within, count);
  s.l1_below_giant_fraction = fraction(l1_small, count);
  s.median_l1 = median(std::move(l1s));
  s.median_l2 = median(std::move(l2s));
}

}  // namespace

TrialSummary supercritical_trial(const Graph& g, const PseudoRandomProfile& profile, const TrialOptions& options) {
  if (!profile.certifies(options.assert_uniqueness))
    throw Error(Errc::not_certified, options.assert_uniqueness ? "profile does not certify A1, A2 and A3"
                                                               : "profile does not certify A1 and A2");
  auto s = prepare(TrialKind::supercritical, g, profile, options, 1 + options.epsilon);
  measure(g, s, options, options.check_outer_complement);
  return s;
}

TrialSummary subcritical_trial(const Graph& g, const PseudoRandomProfile& profile, const TrialOptions& options) {
  if (!profile.a3) throw Error(Errc::not_certified, "profile does not certify A3");
  auto s = prepare(TrialKind::subcritical, g, profile, options, 1 - options.epsilon);
  measure(g, s, options, false);
  return s;
}

TrialSummary hd_uniqueness_trial(const Graph& g, const PseudoRandomProfile& profile, const TrialOptions& options) {
  if (!profile.certifies(false)) throw Error(Errc::not_certified, "profile does not certify A1 and A2");
  auto s = prepare(TrialKind::hd_uniqueness, g, profile, options, 1 + options.epsilon);
  HdOptions hd = options.hd;
  hd.beta = options.beta.value_or(std::pow(options.epsilon, 5));
  if (hd.threads == 0) hd.threads = options.threads;
  s.hd = hd_check(g, profile.p, hd);
  s.hd_falsified = s.hd->falsified;
  measure(g, s, options, options.check_outer_complement);
  return s;
}

}  // namespace percolab
