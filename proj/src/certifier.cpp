#include "percolab/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "percolab/error.hpp"
#include "percolab/format.hpp"
#include "percolab/parallel.hpp"
#include "percolab/rng.hpp"

namespace percolab {

namespace {

void check_density(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw Error(Errc::invalid_argument, "density p must be in (0, 1], got " + format_double(p));
}

// Smallest value >= raw (on a doubling grid of ulp-scale steps) satisfying pred.
template <class Pred>
double smallest_strict(double raw, double scale, Pred pred) {
  double step = std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(scale));
  double x = raw;
  while (!pred(x)) {
    x = raw + step;
    step *= 2;
  }
  return x;
}

}  // namespace

bool a1_holds(std::size_t min_degree, std::size_t n, double p, double a_n) noexcept {
  return static_cast<double>(min_degree) > static_cast<double>(n) * p - a_n;
}

bool a2_holds(std::size_t max_codegree, std::size_t n, double p, double b_n) noexcept {
  return static_cast<double>(max_codegree) < static_cast<double>(n) * p * p + b_n;
}

bool a3_holds(std::size_t max_degree, std::size_t n, double p, double a_n) noexcept {
  return static_cast<double>(max_degree) < static_cast<double>(n) * p + a_n;
}

PseudoRandomProfile with_slacks(PseudoRandomProfile profile, double a_n, double b_n) noexcept {
  profile.a_n = a_n;
  profile.b_n = b_n;
  profile.a1 = a1_holds(profile.min_degree, profile.n, profile.p, a_n);
  profile.a2 = a2_holds(profile.max_codegree, profile.n, profile.p, b_n);
  profile.a3 = a3_holds(profile.max_degree, profile.n, profile.p, a_n);
  return profile;
}

PseudoRandomProfile certify(const Graph& g, double p, double a_n, double b_n, const CoDegreeOptions& options) {
  check_density(p);
  PseudoRandomProfile profile;
  profile.n = g.num_vertices();
  profile.p = p;
  const auto range = degree_range(g);
  profile.min_degree = range.min;
  profile.max_degree = range.max;
  if (g.num_vertices() >= 2) {
    const auto best = max_co_degree(g, options);
    profile.max_codegree = best.value;
    profile.codegree_u = best.u;
    profile.codegree_v = best.v;
    profile.codegree_mode = best.mode;
  }
  return with_slacks(profile, a_n, b_n);
}

namespace {

Slacks tightest(const PseudoRandomProfile& m) {
  const double np = static_cast<double>(m.n) * m.p;
  const double np2 = np * m.p;
  const double raw_a = std::max(np - static_cast<double>(m.min_degree), static_cast<double>(m.max_degree) - np);
  const double a_n = smallest_strict(raw_a, np, [&](double a) {
    return a1_holds(m.min_degree, m.n, m.p, a) && a3_holds(m.max_degree, m.n, m.p, a);
  });
  const double raw_b = static_cast<double>(m.max_codegree) - np2;
  const double b_n = smallest_strict(raw_b, np2, [&](double b) { return a2_holds(m.max_codegree, m.n, m.p, b); });
  return {a_n, b_n};
}

}  // namespace

Slacks estimate_slacks(const Graph& g, double p, const CoDegreeOptions& options) {
  const auto profile = tight_profile(g, p, options);
  return {profile.a_n, profile.b_n};
}

PseudoRandomProfile tight_profile(const Graph& g, double p, const CoDegreeOptions& options) {
  check_density(p);
  if (g.num_vertices() >= 2 && !exact_co_degree_feasible(g, options))
    throw Error(Errc::sampled_mode_unavailable,
                "exact co-degree maximum is infeasible at n=" + std::to_string(g.num_vertices()) +
                    " under the configured work cap");
  const auto measured = certify(g, p, 0, 0, options);
  const auto slacks = tightest(measured);
  return with_slacks(measured, slacks.a_n, slacks.b_n);
}

std::vector<std::uint32_t> degrees_into(const Graph& g, const std::vector<char>& members) {
  std::vector<std::uint32_t> d(g.num_vertices(), 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::uint32_t count = 0;
    for (Vertex w : g.neighbors(v)) count += members[w] != 0;
    d[v] = count;
  }
  return d;
}

namespace {

struct SubsetResult {
  Vertex vertex = 0;
  std::size_t degree = 0;
};

SubsetResult worst_member(const Graph& g, const std::vector<char>& members) {
  const auto d = degrees_into(g, members);
  SubsetResult worst;
  bool seen = false;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!members[v]) continue;
    if (!seen || d[v] > worst.degree) {
      worst = {v, d[v]};
      seen = true;
    }
  }
  return worst;
}

std::vector<char> uniform_subset(std::size_t n, std::size_t size, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  std::vector<char> members(n, 0);
  for (std::size_t i = 0; i < size; ++i) {
    std::swap(pool[i], pool[i + rng.below(n - i)]);
    members[pool[i]] = 1;
  }
  return members;
}

std::vector<char> adversarial_subset(const Graph& g, Vertex root, std::size_t size, std::size_t rounds) {
  const std::size_t n = g.num_vertices();
  std::vector<char> members(n, 1);
  std::vector<char> near_root(n, 0);
  for (Vertex w : g.neighbors(root)) near_root[w] = 1;
  std::vector<Vertex> order;
  for (std::size_t r = 0; r < rounds; ++r) {
    const auto d = degrees_into(g, members);
    order.clear();
    for (Vertex v = 0; v < n; ++v)
      if (v != root) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      if (near_root[a] != near_root[b]) return near_root[a] > near_root[b];
      return d[a] > d[b];
    });
    std::fill(members.begin(), members.end(), 0);
    members[root] = 1;
    for (std::size_t i = 0; i + 1 < size; ++i) members[order[i]] = 1;
  }
  return members;
}

}  // namespace

std::vector<char> hd_subset(const Graph& g, const HdWitness& witness, const HdOptions& options) {
  if (witness.adversarial_root)
    return adversarial_subset(g, *witness.adversarial_root, witness.subset_size,
                              std::max<std::size_t>(1, options.adversarial_rounds));
  return uniform_subset(g.num_vertices(), witness.subset_size, witness.subset_seed.value_or(0));
}

HdReport hd_check(const Graph& g, double p, const HdOptions& options) {
  check_density(p);
  if (options.subset_fraction < 0.9)
    throw Error(Errc::subset_too_small, "subset fraction " + format_double(options.subset_fraction) + " is below 0.9");
  if (!(options.subset_fraction <= 1.0))
    throw Error(Errc::invalid_argument, "subset fraction must be at most 1");
  if (options.trials == 0) throw Error(Errc::invalid_argument, "hd_check needs at least one trial");

  const std::size_t n = g.num_vertices();
  const std::size_t size = floor_count(options.subset_fraction * static_cast<double>(n));
  if (size == 0) throw Error(Errc::subset_too_small, "subset of a graph with n=" + std::to_string(n) + " is empty");

  HdReport report;
  report.p = p;
  report.beta = options.beta;
  report.subset_fraction = options.subset_fraction;
  report.subset_size = size;
  report.trials = options.trials;

  std::vector<Vertex> roots(n);
  std::iota(roots.begin(), roots.end(), Vertex{0});
  std::stable_sort(roots.begin(), roots.end(), [&](Vertex a, Vertex b) { return g.degree_of(a) > g.degree_of(b); });
  roots.resize(std::min(options.adversarial_roots, n));
  report.adversarial_subsets = roots.size();

  const std::size_t jobs = options.trials + roots.size();
  std::vector<HdWitness> results(jobs);
  parallel_for(jobs, thread_count(options.threads), [&](std::size_t job) {
    HdWitness w;
    std::vector<char> members;
    if (job < options.trials) {
      const std::uint64_t subset_seed = derive_seed(options.seed, job);
      members = uniform_subset(n, size, subset_seed);
      w.subset_seed = subset_seed;
    } else {
      const Vertex root = roots[job - options.trials];
      members = adversarial_subset(g, root, size, std::max<std::size_t>(1, options.adversarial_rounds));
      w.adversarial_root = root;
    }
    const auto worst = worst_member(g, members);
    w.vertex = worst.vertex;
    w.degree_in_subset = worst.degree;
    w.subset_size = size;
    results[job] = w;
  });

  const double scale = p * static_cast<double>(size);
  for (const auto& w : results) {
    const double ratio = static_cast<double>(w.degree_in_subset) / scale;
    if (!report.witness || ratio > report.worst_ratio) {
      report.worst_ratio = ratio;
      report.witness = w;
    }
  }
  report.falsified = report.worst_ratio >= 1.0 + options.beta;
  return report;
}

}  // namespace percolab
