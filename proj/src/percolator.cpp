#include "percolab/percolator.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "percolab/error.hpp"
#include "percolab/format.hpp"
#include "percolab/parallel.hpp"
#include "percolab/rng.hpp"

namespace percolab {

std::string_view to_string(LemmaId id) noexcept {
  switch (id) {
    case LemmaId::expansion: return "expansion";
    case LemmaId::variance: return "variance";
    case LemmaId::xi_count: return "xi_count";
    case LemmaId::outer_complement: return "outer_complement";
    case LemmaId::inclusion_exclusion: return "inclusion_exclusion";
    case LemmaId::binomial_tail: return "binomial_tail";
  }
  return "unknown";
}

std::vector<double> vertex_uniforms(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> u(n);
  for (auto& x : u) x = rng.uniform();
  return u;
}

namespace {

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw Error(Errc::invalid_argument, "rho must be in [0, 1], got " + format_double(rho));
}

// `retain(query_index, vertex)` supplies the Bernoulli decision of each query.
template <class Retain>
PercolationOutcome explore(const Graph& g, Retain&& retain) {
  const std::size_t n = g.num_vertices();
  const auto offsets = g.offsets();
  const auto adjacency = g.adjacency();

  PercolationOutcome out;
  out.query_order.reserve(n);
  std::vector<char> untouched(n, 1);
  std::vector<char> kept(n, 0);
  struct Frame {
    Vertex vertex;
    std::uint64_t cursor;
  };
  std::vector<Frame> stack;
  std::vector<Vertex> component;
  std::size_t epoch_start = 0;
  Vertex next_root = 0;
  std::size_t queries = 0;

  auto query = [&](Vertex v) {
    untouched[v] = 0;
    out.query_order.push_back(v);
    const bool keep = retain(queries, v);
    ++queries;
    if (keep) {
      kept[v] = 1;
      stack.push_back({v, offsets[v]});
      component.push_back(v);
    }
    return keep;
  };

  for (;;) {
    if (stack.empty()) {
      if (!component.empty()) {
        std::sort(component.begin(), component.end());
        out.components.push_back(std::move(component));
        component.clear();
        out.epochs.push_back({epoch_start, queries});
      }
      while (next_root < n && !untouched[next_root]) ++next_root;
      if (next_root == n) break;
      epoch_start = queries;
      query(next_root);
      continue;
    }
    Frame& top = stack.back();
    const std::uint64_t end = offsets[top.vertex + 1];
    while (top.cursor < end && !untouched[adjacency[top.cursor]]) ++top.cursor;
    if (top.cursor == end) {
      stack.pop_back();
      continue;
    }
    const Vertex next = adjacency[top.cursor++];
    query(next);  // may reallocate `stack`; `top` is not used afterwards
  }

  out.bits_consumed = queries;
  for (Vertex v = 0; v < n; ++v) (kept[v] ? out.retained : out.rejected).push_back(v);
  return out;
}

}  // namespace

PercolationOutcome dfs_percolate(const Graph& g, const BernoulliStream& stream) {
  if (stream.mode == BernoulliStream::Mode::explicit_bits) {
    if (stream.bits.size() != g.num_vertices())
      throw Error(Errc::stream_length_mismatch, std::to_string(stream.bits.size()) + " bits for n=" +
                                                    std::to_string(g.num_vertices()));
    auto out = explore(g, [&](std::size_t i, Vertex) { return stream.bits[i] != 0; });
    out.rho = stream.rho;
    out.seed = stream.seed;
    return out;
  }
  check_rho(stream.rho);
  const auto uniforms = vertex_uniforms(g.num_vertices(), stream.seed);
  return dfs_percolate(g, uniforms, stream.rho, stream.seed);
}

PercolationOutcome dfs_percolate(const Graph& g, std::span<const double> uniforms, double rho, std::uint64_t seed) {
  check_rho(rho);
  if (uniforms.size() != g.num_vertices())
    throw Error(Errc::stream_length_mismatch, std::to_string(uniforms.size()) + " uniforms for n=" +
                                                  std::to_string(g.num_vertices()));
  auto out = explore(g, [&](std::size_t, Vertex v) { return uniforms[v] < rho; });
  out.rho = rho;
  out.seed = seed;
  return out;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), Vertex{0}); }

  Vertex find(Vertex x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<Vertex> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace

std::vector<std::vector<Vertex>> oracle_components(const Graph& g, std::span<const Vertex> retained) {
  const std::size_t n = g.num_vertices();
  std::vector<char> in_set(n, 0);
  for (Vertex v : retained) {
    g.check_vertex(v);
    in_set[v] = 1;
  }
  DisjointSets sets(n);
  for (Vertex u = 0; u < n; ++u) {
    if (!in_set[u]) continue;
    for (Vertex w : g.neighbors(u))
      if (w > u && in_set[w]) sets.unite(u, w);
  }
  // Scanning vertices in ascending order yields components ordered by their
  // smallest member, each already sorted.
  std::vector<std::vector<Vertex>> components;
  std::vector<std::size_t> slot(n, SIZE_MAX);
  for (Vertex v = 0; v < n; ++v) {
    if (!in_set[v]) continue;
    const Vertex root = sets.find(v);
    if (slot[root] == SIZE_MAX) {
      slot[root] = components.size();
      components.emplace_back();
    }
    components[slot[root]].push_back(v);
  }
  return components;
}

LargestTwo largest_two(const std::vector<std::vector<Vertex>>& components) noexcept {
  LargestTwo r;
  for (const auto& c : components) {
    const std::size_t s = c.size();
    if (s > r.first) {
      r.second = r.first;
      r.first = s;
    } else if (s > r.second) {
      r.second = s;
    }
  }
  return r;
}

LargestTwo largest_two(const PercolationOutcome& outcome) noexcept { return largest_two(outcome.components); }

// ---------------------------------------------------------------------------

namespace {

struct TailLimits {
  std::size_t short_prefix;  // ceil(eps^3 n)
  std::size_t long_prefix;   // floor(eps n)
  double p;
  double item1_bound;
  double item2_bound;
  double item3_rate;  // (1 + 3 eps / 4) / (n p)
};

TailLimits tail_limits(std::size_t n, double rho, double epsilon) {
  if (!(epsilon > 0)) throw Error(Errc::invalid_epsilon, "epsilon must be positive");
  const double nd = static_cast<double>(n);
  const double cube = epsilon * epsilon * epsilon;
  if (cube * nd < 1.0)
    throw Error(Errc::invalid_epsilon, "eps^3 n = " + format_double(cube * nd) + " is below 1");
  if (!(rho > 0.0 && rho < 1.0)) throw Error(Errc::invalid_argument, "rho must be in (0, 1)");
  TailLimits t;
  t.short_prefix = ceil_count(cube * nd);
  t.long_prefix = std::min(n, floor_count(epsilon * nd));
  t.p = (1 + epsilon) / (nd * rho);
  t.item1_bound = 2 * cube / t.p;
  t.item2_bound = 2 * epsilon / t.p;
  t.item3_rate = (1 + 0.75 * epsilon) / (nd * t.p);
  return t;
}

// Bounds that are integers on paper (e.g. 2 eps^3 / p = 5) must not fail on
// representation noise, so comparisons carry the same relative slack as
// ceil_count / floor_count.
constexpr double kNoise = 1e-12;

BinomialTailVerdict evaluate(std::span<const std::uint8_t> stream, const TailLimits& lim) {
  BinomialTailVerdict v;
  const double item1 = lim.item1_bound * (1 + kNoise);
  const double item2 = lim.item2_bound * (1 + kNoise);
  const double rate = lim.item3_rate * (1 - kNoise);
  std::size_t sum = 0;
  for (std::size_t t = 1; t <= lim.long_prefix; ++t) {
    sum += stream[t - 1] != 0;
    if (t == lim.short_prefix && static_cast<double>(sum) > item1) v.item1 = false;
    if (t >= lim.short_prefix && v.item3 && static_cast<double>(sum) < rate * static_cast<double>(t)) {
      v.item3 = false;
      v.item3_first_failure = t;
    }
  }
  if (static_cast<double>(sum) > item2) v.item2 = false;
  return v;
}

}  // namespace

BinomialTailVerdict evaluate_binomial_tails(std::span<const std::uint8_t> stream, std::size_t n, double rho,
                                            double epsilon) {
  const auto lim = tail_limits(n, rho, epsilon);
  if (stream.size() < lim.long_prefix)
    throw Error(Errc::stream_length_mismatch, "stream shorter than floor(eps n) = " + std::to_string(lim.long_prefix));
  return evaluate(stream, lim);
}

std::vector<std::uint8_t> binomial_stream(std::uint64_t seed, std::size_t trial, double rho, std::size_t length) {
  Rng rng(derive_seed(seed, trial));
  std::vector<std::uint8_t> y(length);
  for (auto& bit : y) bit = rng.uniform() < rho ? 1 : 0;
  return y;
}

LemmaReport binomial_stream_check(std::size_t n, double rho, double epsilon, const BinomialTailOptions& options) {
  const auto lim = tail_limits(n, rho, epsilon);
  if (options.trials == 0) throw Error(Errc::invalid_argument, "binomial_stream_check needs at least one trial");

  std::vector<BinomialTailVerdict> verdicts(options.trials);
  parallel_for(options.trials, thread_count(options.threads), [&](std::size_t k) {
    verdicts[k] = evaluate(binomial_stream(options.seed, k, rho, lim.long_prefix), lim);
  });

  LemmaReport report;
  report.id = LemmaId::binomial_tail;
  report.checked_count = options.trials;
  report.parameters = {{"n", static_cast<double>(n)},
                       {"rho", rho},
                       {"epsilon", epsilon},
                       {"p", lim.p},
                       {"trials", static_cast<double>(options.trials)},
                       {"seed", static_cast<double>(options.seed)},
                       {"tolerance", options.tolerance}};
  std::size_t failures[3] = {0, 0, 0};
  for (std::size_t k = 0; k < verdicts.size(); ++k) {
    const auto& v = verdicts[k];
    failures[0] += !v.item1;
    failures[1] += !v.item2;
    failures[2] += !v.item3;
    if (!report.witness && (!v.item1 || !v.item2 || !v.item3)) {
      LemmaWitness w;
      const auto stream = binomial_stream(options.seed, k, rho, lim.long_prefix);
      auto prefix = [&](std::size_t t) {
        return static_cast<double>(std::count(stream.begin(), stream.begin() + static_cast<std::ptrdiff_t>(t), 1));
      };
      w.details["trial"] = static_cast<double>(k);
      if (!v.item1) {
        w.details["item"] = 1;
        w.details["t"] = static_cast<double>(lim.short_prefix);
        w.measured = prefix(lim.short_prefix);
        w.bound = lim.item1_bound;
      } else if (!v.item2) {
        w.details["item"] = 2;
        w.details["t"] = static_cast<double>(lim.long_prefix);
        w.measured = prefix(lim.long_prefix);
        w.bound = lim.item2_bound;
      } else {
        w.details["item"] = 3;
        w.details["t"] = static_cast<double>(v.item3_first_failure);
        w.measured = prefix(v.item3_first_failure);
        w.bound = lim.item3_rate * static_cast<double>(v.item3_first_failure);
      }
      report.witness = w;
    }
  }
  const double trials = static_cast<double>(options.trials);
  double worst = 0;
  for (int item = 0; item < 3; ++item) {
    const double freq = static_cast<double>(failures[item]) / trials;
    report.extra["item" + std::to_string(item + 1) + "_failure_frequency"] = freq;
    worst = std::max(worst, freq);
  }
  report.extra["short_prefix"] = static_cast<double>(lim.short_prefix);
  report.extra["long_prefix"] = static_cast<double>(lim.long_prefix);
  report.measured = worst;
  report.bound = options.tolerance;
  report.passed = worst <= options.tolerance;
  return report;
}

}  // namespace percolab
