#include "percolab/lemma_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "percolab/error.hpp"
#include "percolab/format.hpp"
#include "percolab/parallel.hpp"
#include "percolab/rng.hpp"

namespace percolab {

namespace {

// Range and repetition check; returns a membership mask.
std::vector<char> membership(const Graph& g, std::span<const Vertex> set) {
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : set) {
    g.check_vertex(v);
    if (in[v]) throw Error(Errc::invalid_argument, "vertex " + std::to_string(v) + " repeated in set");
    in[v] = 1;
  }
  return in;
}

std::vector<Vertex> sorted_copy(std::span<const Vertex> set) {
  std::vector<Vertex> out(set.begin(), set.end());
  std::sort(out.begin(), out.end());
  return out;
}

void require_certified(const PseudoRandomProfile& profile, const Graph& g, bool with_a3) {
  if (profile.n != g.num_vertices())
    throw Error(Errc::invalid_argument, "profile measured n=" + std::to_string(profile.n) + " but graph has n=" +
                                            std::to_string(g.num_vertices()));
  if (!profile.certifies(with_a3))
    throw Error(Errc::assumptions_not_certified,
                std::string("profile does not certify ") + (with_a3 ? "A1, A2 and A3" : "A1 and A2"));
}

std::map<std::string, double> profile_parameters(const PseudoRandomProfile& profile) {
  return {{"n", static_cast<double>(profile.n)},
          {"p", profile.p},
          {"a_n", profile.a_n},
          {"b_n", profile.b_n},
          {"codegree_exact", profile.exact() ? 1.0 : 0.0}};
}

// Stamp-based |N_G(H)| evaluator reused across many sets.
class NeighborhoodCounter {
 public:
  explicit NeighborhoodCounter(const Graph& g) : g_(g), mark_(g.num_vertices(), 0) {}

  std::size_t operator()(std::span<const Vertex> set) {
    if (++stamp_ == 0) {
      std::fill(mark_.begin(), mark_.end(), 0);
      stamp_ = 1;
    }
    for (Vertex v : set) mark_[v] = stamp_;
    std::size_t count = 0;
    for (Vertex v : set)
      for (Vertex w : g_.neighbors(v))
        if (mark_[w] != stamp_) {
          mark_[w] = stamp_;
          ++count;
        }
    return count;
  }

 private:
  const Graph& g_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
};

}  // namespace

std::size_t external_neighborhood_size(const Graph& g, std::span<const Vertex> set) {
  membership(g, set);
  NeighborhoodCounter count(g);
  return count(set);
}

std::size_t outer_complement_size(const Graph& g, std::span<const Vertex> set) {
  return g.num_vertices() - external_neighborhood_size(g, set) - set.size();
}

long long inclusion_exclusion_lower_bound(const Graph& g, std::span<const Vertex> set) {
  if (set.empty()) throw Error(Errc::empty_set, "inclusion-exclusion bound of an empty set");
  membership(g, set);
  long long value = -static_cast<long long>(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    value += static_cast<long long>(g.degree_of(set[i]));
    for (std::size_t j = i + 1; j < set.size(); ++j)
      value -= static_cast<long long>(intersection_size(g.neighbors(set[i]), g.neighbors(set[j])));
  }
  return value;
}

LemmaReport inclusion_exclusion_check(const Graph& g, std::span<const Vertex> set) {
  const long long lower = inclusion_exclusion_lower_bound(g, set);
  const auto exact = external_neighborhood_size(g, set);
  LemmaReport report;
  report.id = LemmaId::inclusion_exclusion;
  report.checked_count = 1;
  report.parameters = {{"n", static_cast<double>(g.num_vertices())}, {"set_size", static_cast<double>(set.size())}};
  // Here the exact neighborhood is the measured quantity and the lower bound
  // is what it must not fall below.
  report.measured = static_cast<double>(exact);
  report.bound = static_cast<double>(lower);
  report.passed = lower <= static_cast<long long>(exact);
  if (!report.passed) report.witness = LemmaWitness{sorted_copy(set), report.measured, report.bound, {}};
  return report;
}

// ---------------------------------------------------------------------------

double expansion_bound(std::size_t n, double p, std::size_t m, double alpha0) noexcept {
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return (1 - alpha0) * (nd * p * md - nd * p * p * md * md / 2);
}

namespace {

double binomial_coefficient(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  double value = 1;
  for (std::size_t i = 1; i <= k; ++i) value = value * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(value);
}

struct ExpansionScan {
  std::size_t checked = 0;
  std::size_t min_size = std::numeric_limits<std::size_t>::max();
  std::vector<Vertex> min_set;
  std::vector<Vertex> violation;
  std::size_t violation_size = 0;

  void record(std::span<const Vertex> set, std::size_t size, double bound) {
    ++checked;
    if (size < min_size) {
      min_size = size;
      min_set.assign(set.begin(), set.end());
    }
    if (violation.empty() && static_cast<double>(size) < bound) {
      violation.assign(set.begin(), set.end());
      violation_size = size;
    }
  }
};

// All m-subsets whose smallest element is `first`, in lexicographic order.
void scan_prefix(const Graph& g, Vertex first, std::size_t m, double bound, ExpansionScan& scan) {
  const std::size_t n = g.num_vertices();
  NeighborhoodCounter count(g);
  std::vector<Vertex> set(m);
  set[0] = first;
  if (m == 1) {
    scan.record(set, count(set), bound);
    return;
  }
  for (std::size_t i = 1; i < m; ++i) set[i] = static_cast<Vertex>(first + i);
  if (set[m - 1] >= n) return;
  for (;;) {
    scan.record(set, count(set), bound);
    std::size_t i = m - 1;
    while (i >= 1 && set[i] == n - m + i) --i;
    if (i == 0) return;
    ++set[i];
    for (std::size_t j = i + 1; j < m; ++j) set[j] = set[j - 1] + 1;
  }
}

std::vector<Vertex> greedy_set(const Graph& g, Vertex start, std::size_t m, NeighborhoodCounter& count) {
  std::vector<Vertex> set{start};
  std::vector<char> in(g.num_vertices(), 0);
  in[start] = 1;
  while (set.size() < m) {
    Vertex best = 0;
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    set.push_back(0);
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
      if (in[x]) continue;
      set.back() = x;
      const auto s = count(set);
      if (s < best_size) {
        best_size = s;
        best = x;
      }
    }
    set.back() = best;
    in[best] = 1;
  }
  std::sort(set.begin(), set.end());
  return set;
}

}  // namespace

LemmaReport expansion_check(const Graph& g, const PseudoRandomProfile& profile, const ExpansionOptions& options) {
  const std::size_t n = g.num_vertices();
  if (profile.n != n)
    throw Error(Errc::invalid_argument, "profile measured n=" + std::to_string(profile.n) + " but graph has n=" +
                                            std::to_string(n));
  const double p = profile.p;
  const double mp = static_cast<double>(options.m) * p;
  if (!(options.c < mp && mp <= 1.0 / 3.0))
    throw Error(Errc::precondition_violated, "need c < m p <= 1/3, got c=" + format_double(options.c) +
                                                 ", m p=" + format_double(mp));
  if (options.m == 0 || options.m > n)
    throw Error(Errc::invalid_argument, "set size m=" + std::to_string(options.m) + " with n=" + std::to_string(n));
  if (!(options.alpha0 > 0 && options.alpha0 <= 1)) throw Error(Errc::invalid_argument, "alpha0 must be in (0, 1]");

  const double bound = expansion_bound(n, p, options.m, options.alpha0);
  LemmaReport report;
  report.id = LemmaId::expansion;
  report.parameters = profile_parameters(profile);
  report.parameters["m"] = static_cast<double>(options.m);
  report.parameters["alpha0"] = options.alpha0;
  report.parameters["c"] = options.c;
  report.parameters["exhaustive"] = options.mode == ExpansionMode::exhaustive ? 1.0 : 0.0;
  report.bound = bound;

  ExpansionScan total;
  if (options.mode == ExpansionMode::exhaustive) {
    const double sets = binomial_coefficient(n, options.m);
    if (sets > options.max_combinations)
      throw Error(Errc::combination_overflow, format_double(sets) + " sets exceed the exhaustive cap of " +
                                                  format_double(options.max_combinations));
    const std::size_t prefixes = n - options.m + 1;
    std::vector<ExpansionScan> partial(prefixes);
    parallel_for(prefixes, thread_count(options.threads), [&](std::size_t f) {
      scan_prefix(g, static_cast<Vertex>(f), options.m, bound, partial[f]);
    });
    for (auto& part : partial) {
      total.checked += part.checked;
      if (part.min_size < total.min_size) {
        total.min_size = part.min_size;
        total.min_set = std::move(part.min_set);
      }
      if (total.violation.empty() && !part.violation.empty()) {
        total.violation = std::move(part.violation);
        total.violation_size = part.violation_size;
      }
    }
  } else {
    NeighborhoodCounter count(g);
    Rng rng(options.seed);
    std::vector<Vertex> pool(n);
    std::iota(pool.begin(), pool.end(), Vertex{0});
    std::vector<Vertex> set(options.m);
    for (std::size_t s = 0; s < options.sampled_sets; ++s) {
      for (std::size_t i = 0; i < options.m; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
      std::copy_n(pool.begin(), options.m, set.begin());
      std::sort(set.begin(), set.end());
      total.record(set, count(set), bound);
    }
    std::vector<Vertex> starts(n);
    std::iota(starts.begin(), starts.end(), Vertex{0});
    std::stable_sort(starts.begin(), starts.end(), [&](Vertex a, Vertex b) { return g.degree_of(a) < g.degree_of(b); });
    starts.resize(std::min(options.greedy_starts, n));
    for (Vertex start : starts) {
      const auto greedy = greedy_set(g, start, options.m, count);
      total.record(greedy, count(greedy), bound);
    }
  }

  report.checked_count = total.checked;
  report.passed = total.violation.empty();
  if (!report.passed) {
    report.measured = static_cast<double>(total.violation_size);
    report.witness = LemmaWitness{total.violation, report.measured, bound, {}};
  } else {
    report.measured = total.checked ? static_cast<double>(total.min_size) : 0.0;
  }
  if (!total.min_set.empty())
    report.extra["min_neighborhood_first_vertex"] = static_cast<double>(total.min_set.front());
  return report;
}

// ---------------------------------------------------------------------------

double variance_bound(std::size_t n, double p, double a_n, double b_n, std::size_t u_size) noexcept {
  const double nd = static_cast<double>(n);
  const double u = static_cast<double>(u_size);
  return p * (1 - p) * u + u * (a_n - b_n) / nd + (b_n / nd) * u * u + 2 * (a_n * p / nd) * u -
         a_n * a_n * u * u / (nd * nd);
}

double variance_remark_bound(std::size_t n, double p, double b_n, std::size_t u_size) noexcept {
  const double u = static_cast<double>(u_size);
  return 2 * p * u + 3 * b_n / static_cast<double>(n) * u * u;
}

double variance_bound_from_assumptions(std::size_t n, double p, double a_n, double b_n, std::size_t u_size) noexcept {
  const double nd = static_cast<double>(n);
  const double u = static_cast<double>(u_size);
  const double np = nd * p;
  const double mean_floor = (np - a_n) * u / nd;
  return (u * (np + a_n) + u * (u - 1) * (np * p + b_n)) / nd - mean_floor * mean_floor;
}

double degree_into_variance(const Graph& g, std::span<const Vertex> set) {
  const auto in = membership(g, set);
  const std::size_t n = g.num_vertices();
  if (n == 0) return 0;
  const auto d = degrees_into(g, in);
  __int128 s1 = 0;
  __int128 s2 = 0;
  for (auto x : d) {
    s1 += x;
    s2 += static_cast<__int128>(x) * x;
  }
  const __int128 numerator = static_cast<__int128>(n) * s2 - s1 * s1;
  return static_cast<double>(numerator) / (static_cast<double>(n) * static_cast<double>(n));
}

LemmaReport variance_bound_check(const Graph& g, std::span<const Vertex> set, const PseudoRandomProfile& profile) {
  require_certified(profile, g, true);
  const std::size_t n = g.num_vertices();
  const double variance = degree_into_variance(g, set);
  const double bound = variance_bound(n, profile.p, profile.a_n, profile.b_n, set.size());

  LemmaReport report;
  report.id = LemmaId::variance;
  report.checked_count = 1;
  report.parameters = profile_parameters(profile);
  report.parameters["u_size"] = static_cast<double>(set.size());
  report.measured = variance;
  report.bound = bound;
  report.passed = variance <= bound;
  report.extra["bound_from_assumptions"] =
      variance_bound_from_assumptions(n, profile.p, profile.a_n, profile.b_n, set.size());
  if (2 * set.size() >= n) {
    const double remark = variance_remark_bound(n, profile.p, profile.b_n, set.size());
    report.extra["remark_bound"] = remark;
    report.extra["remark_passed"] = variance <= remark ? 1.0 : 0.0;
  }
  if (!report.passed) report.witness = LemmaWitness{sorted_copy(set), variance, bound, {}};
  return report;
}

// ---------------------------------------------------------------------------

double xi_bound(double p, double b_n, double alpha) noexcept {
  const double ap = alpha * p;
  return 4.0 / (ap * ap) * (4 * p + 12 * b_n);
}

std::vector<Vertex> high_degree_set(const Graph& g, std::span<const Vertex> set, double p, double alpha) {
  const auto in = membership(g, set);
  const auto d = degrees_into(g, in);
  const double threshold = (1 + alpha) * p * static_cast<double>(set.size());
  std::vector<Vertex> xi;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (static_cast<double>(d[v]) >= threshold) xi.push_back(v);
  return xi;
}

LemmaReport xi_count_check(const Graph& g, std::span<const Vertex> set, const PseudoRandomProfile& profile,
                           double alpha) {
  const std::size_t n = g.num_vertices();
  if (2 * set.size() < n)
    throw Error(Errc::u_small, "|U|=" + std::to_string(set.size()) + " is below n/2 with n=" + std::to_string(n));
  if (!(alpha > 0)) throw Error(Errc::invalid_argument, "alpha must be positive");
  const double slack_cap = alpha * profile.p * static_cast<double>(n) / 2;
  if (profile.a_n > slack_cap)
    throw Error(Errc::slack_too_large, "a_n=" + format_double(profile.a_n) + " exceeds alpha p n / 2 = " +
                                           format_double(slack_cap));
  require_certified(profile, g, true);

  const auto xi = high_degree_set(g, set, profile.p, alpha);
  const double bound = xi_bound(profile.p, profile.b_n, alpha);
  LemmaReport report;
  report.id = LemmaId::xi_count;
  report.checked_count = 1;
  report.parameters = profile_parameters(profile);
  report.parameters["alpha"] = alpha;
  report.parameters["u_size"] = static_cast<double>(set.size());
  report.measured = static_cast<double>(xi.size());
  report.bound = bound;
  report.passed = static_cast<double>(xi.size()) <= bound;
  report.extra["degree_threshold"] = (1 + alpha) * profile.p * static_cast<double>(set.size());
  if (!report.passed) report.witness = LemmaWitness{xi, report.measured, bound, {}};
  return report;
}

// ---------------------------------------------------------------------------

double outer_complement_ln(std::size_t n, double p, double a_n, double b_n, double epsilon) noexcept {
  const double nd = static_cast<double>(n);
  return a_n / nd + (epsilon / 2) * b_n / (nd * p * p);
}

double outer_complement_bound(std::size_t n, double p, double a_n, double b_n, double epsilon) noexcept {
  const double ln = outer_complement_ln(n, p, a_n, b_n, epsilon);
  return static_cast<double>(n) * (1 - epsilon + epsilon * epsilon / 2 + epsilon * ln);
}

double outer_complement_statement_bound(std::size_t n, double p, double a_n, double b_n, double epsilon) noexcept {
  const double ln = outer_complement_ln(n, p, a_n, b_n, epsilon);
  return static_cast<double>(n) * (1 - epsilon + epsilon * epsilon + epsilon * ln);
}

bool induces_connected(const Graph& g, std::span<const Vertex> set) {
  if (set.empty()) return false;
  const auto in = membership(g, set);
  const auto reached = grow_connected_set(g, set.front(), set.size(), set);
  return reached.size() == set.size();
}

std::vector<Vertex> grow_connected_set(const Graph& g, Vertex root, std::size_t size, std::span<const Vertex> within) {
  g.check_vertex(root);
  std::vector<char> allowed;
  if (!within.empty()) {
    allowed.assign(g.num_vertices(), 0);
    for (Vertex v : within) {
      g.check_vertex(v);
      allowed[v] = 1;
    }
    if (!allowed[root]) return {};
  }
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<Vertex> out;
  std::queue<Vertex> frontier;
  seen[root] = 1;
  frontier.push(root);
  while (!frontier.empty() && out.size() < size) {
    const Vertex v = frontier.front();
    frontier.pop();
    out.push_back(v);
    for (Vertex w : g.neighbors(v))
      if (!seen[w] && (allowed.empty() || allowed[w])) {
        seen[w] = 1;
        frontier.push(w);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LemmaReport outer_complement_check(const Graph& g, std::span<const Vertex> set, const PseudoRandomProfile& profile,
                                   double epsilon) {
  if (set.empty()) throw Error(Errc::empty_set, "outer complement of an empty set");
  if (!(epsilon > 0 && epsilon < 1)) throw Error(Errc::invalid_argument, "epsilon must be in (0, 1)");
  if (!induces_connected(g, set)) throw Error(Errc::not_connected, "set does not induce a connected subgraph");
  const std::size_t target = ceil_count(epsilon / profile.p);
  const std::size_t size = set.size();
  if (size + 1 < target || size > target + 1)
    throw Error(Errc::size_mismatch, "|C|=" + std::to_string(size) + " but ceil(eps / p) = " + std::to_string(target));
  require_certified(profile, g, false);

  const std::size_t n = g.num_vertices();
  const auto outer = outer_complement_size(g, set);
  const double bound = outer_complement_bound(n, profile.p, profile.a_n, profile.b_n, epsilon);
  const double statement = outer_complement_statement_bound(n, profile.p, profile.a_n, profile.b_n, epsilon);

  LemmaReport report;
  report.id = LemmaId::outer_complement;
  report.checked_count = 1;
  report.parameters = profile_parameters(profile);
  report.parameters["epsilon"] = epsilon;
  report.parameters["c_size"] = static_cast<double>(size);
  report.parameters["c_target_size"] = static_cast<double>(target);
  report.measured = static_cast<double>(outer);
  report.bound = bound;
  report.passed = static_cast<double>(outer) <= bound;
  report.extra["l_n"] = outer_complement_ln(n, profile.p, profile.a_n, profile.b_n, epsilon);
  report.extra["statement_bound"] = statement;
  report.extra["statement_passed"] = static_cast<double>(outer) <= statement ? 1.0 : 0.0;
  if (!report.passed) report.witness = LemmaWitness{sorted_copy(set), report.measured, bound, {}};
  return report;
}

}  // namespace percolab
