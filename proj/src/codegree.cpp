#include "percolab/codegree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "percolab/error.hpp"
#include "percolab/parallel.hpp"
#include "percolab/rng.hpp"

namespace percolab {

std::string_view to_string(CoDegreeMode mode) noexcept {
  return mode == CoDegreeMode::exact ? "exact" : "sampled";
}

namespace {

enum class Strategy { bitset, wedge, sampled };

struct Best {
  std::size_t value = 0;
  Vertex u = 0;
  Vertex v = 0;
  bool found = false;

  void offer(std::size_t value_, Vertex a, Vertex b) noexcept {
    if (a > b) std::swap(a, b);
    if (!found || value_ > value || (value_ == value && (a < u || (a == u && b < v)))) {
      value = value_;
      u = a;
      v = b;
      found = true;
    }
  }
  void merge(const Best& other) noexcept {
    if (other.found) offer(other.value, other.u, other.v);
  }
};

double wedge_work(const Graph& g) {
  double work = 0.5 * static_cast<double>(g.num_vertices()) * static_cast<double>(g.num_vertices());
  for (Vertex w = 0; w < g.num_vertices(); ++w) {
    const auto d = static_cast<double>(g.degree_of(w));
    work += 0.5 * d * d;
  }
  return work;
}

double bitset_work(const Graph& g) {
  const auto n = static_cast<double>(g.num_vertices());
  return 0.5 * n * n * std::ceil(n / 64.0);
}

Strategy choose(const Graph& g, const CoDegreeOptions& options) {
  const double wedge = wedge_work(g);
  const bool bitset_ok = g.num_vertices() <= options.bitset_max_n;
  const double bitset = bitset_ok ? bitset_work(g) : INFINITY;
  const double best = std::min(wedge, bitset);
  if (best > options.exact_work_cap) return Strategy::sampled;
  return bitset < wedge ? Strategy::bitset : Strategy::wedge;
}

constexpr std::size_t kChunks = 256;

MaxCoDegree by_bitset(const Graph& g, unsigned threads) {
  const std::size_t n = g.num_vertices();
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> rows(n * words, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v)) rows[v * words + w / 64] |= std::uint64_t{1} << (w % 64);

  const std::size_t chunks = std::min(kChunks, n);
  std::vector<Best> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Best best;
    // Interleave u across chunks so the triangular workload balances.
    for (std::size_t u = c; u < n; u += chunks) {
      const std::uint64_t* ru = &rows[u * words];
      for (std::size_t v = u + 1; v < n; ++v) {
        const std::uint64_t* rv = &rows[v * words];
        std::size_t common = 0;
        for (std::size_t k = 0; k < words; ++k) common += static_cast<std::size_t>(std::popcount(ru[k] & rv[k]));
        best.offer(common, static_cast<Vertex>(u), static_cast<Vertex>(v));
      }
    }
    partial[c] = best;
  });
  Best best;
  for (const auto& b : partial) best.merge(b);
  return {best.value, best.u, best.v, CoDegreeMode::exact, n * (n - 1) / 2};
}

MaxCoDegree by_wedges(const Graph& g, unsigned threads) {
  const std::size_t n = g.num_vertices();
  const std::size_t chunks = std::min(kChunks, n);
  std::vector<Best> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Best best;
    std::vector<std::uint32_t> count(n, 0);
    for (std::size_t u = c; u < n; u += chunks) {
      for (Vertex w : g.neighbors(static_cast<Vertex>(u))) {
        const auto nbrs = g.neighbors(w);
        for (auto it = std::upper_bound(nbrs.begin(), nbrs.end(), static_cast<Vertex>(u)); it != nbrs.end(); ++it)
          ++count[*it];
      }
      for (std::size_t x = u + 1; x < n; ++x) {
        best.offer(count[x], static_cast<Vertex>(u), static_cast<Vertex>(x));
        count[x] = 0;
      }
    }
    partial[c] = best;
  });
  Best best;
  for (const auto& b : partial) best.merge(b);
  return {best.value, best.u, best.v, CoDegreeMode::exact, n * (n - 1) / 2};
}

MaxCoDegree by_sampling(const Graph& g, const CoDegreeOptions& options, unsigned threads) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g.degree_of(a) > g.degree_of(b); });
  const auto top = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(options.top_fraction * static_cast<double>(n))), 1, n);

  std::vector<Best> partial(top);
  parallel_for(top, threads, [&](std::size_t i) {
    const Vertex t = order[i];
    std::vector<std::uint32_t> count(n, 0);
    for (Vertex w : g.neighbors(t))
      for (Vertex x : g.neighbors(w)) ++count[x];
    Best best;
    for (Vertex x = 0; x < n; ++x)
      if (x != t) best.offer(count[x], t, x);
    partial[i] = best;
  });
  Best best;
  for (const auto& b : partial) best.merge(b);

  Rng rng(options.seed);
  for (std::size_t s = 0; s < options.sample_pairs; ++s) {
    const auto a = static_cast<Vertex>(rng.below(n));
    auto b = static_cast<Vertex>(rng.below(n - 1));
    if (b >= a) ++b;
    best.offer(intersection_size(g.neighbors(a), g.neighbors(b)), a, b);
  }
  return {best.value, best.u, best.v, CoDegreeMode::sampled, top * (n - 1) + options.sample_pairs};
}

}  // namespace

bool exact_co_degree_feasible(const Graph& g, const CoDegreeOptions& options) {
  return choose(g, options) != Strategy::sampled;
}

MaxCoDegree max_co_degree(const Graph& g, const CoDegreeOptions& options) {
  if (g.num_vertices() < 2)
    throw Error(Errc::graph_too_small, "max co-degree needs at least two vertices, got " +
                                           std::to_string(g.num_vertices()));
  const unsigned threads = thread_count(options.threads);
  switch (choose(g, options)) {
    case Strategy::bitset: return by_bitset(g, threads);
    case Strategy::wedge: return by_wedges(g, threads);
    case Strategy::sampled: break;
  }
  return by_sampling(g, options, threads);
}

}  // namespace percolab
