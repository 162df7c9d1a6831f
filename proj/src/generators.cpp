#include "percolab/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "percolab/edge_list.hpp"
#include "percolab/error.hpp"
#include "percolab/format.hpp"
#include "percolab/rng.hpp"

namespace percolab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

bool valid_density(double p) { return p > 0.0 && p < 1.0; }

void check_edge_budget(double edges, const GenerateLimits& limits) {
  if (edges > static_cast<double>(limits.max_edges))
    throw Error(Errc::resource_limit, "about " + format_double(std::round(edges)) + " edges exceeds the cap of " +
                                          std::to_string(limits.max_edges));
}

std::vector<Edge> gnp_edges(std::size_t n, double p, std::uint64_t seed, const GenerateLimits& limits) {
  const auto nd = static_cast<double>(n);
  check_edge_budget(p * nd * (nd - 1) / 2, limits);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(p * nd * (nd - 1) / 2 * 1.01) + 16);
  Rng rng(seed);
  const double log_q = std::log1p(-p);
  const auto total = static_cast<std::int64_t>(n);
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < total) {
    const double skip = std::floor(std::log1p(-rng.uniform()) / log_q);
    if (skip >= nd * nd) break;
    w += 1 + static_cast<std::int64_t>(skip);
    while (w >= v && v < total) {
      w -= v;
      ++v;
    }
    if (v < total) {
      edges.push_back({static_cast<Vertex>(w), static_cast<Vertex>(v)});
      if (edges.size() > limits.max_edges) check_edge_budget(static_cast<double>(edges.size()), limits);
    }
  }
  return edges;
}

Graph gnp(const GnpSpec& s, const GenerateLimits& limits) {
  const auto edges = gnp_edges(s.n, s.p, s.seed, limits);
  return Graph::from_edges(s.n, edges);
}

Graph complete(const CompleteSpec& s, const GenerateLimits& limits) {
  const auto nd = static_cast<double>(s.n);
  check_edge_budget(nd * (nd - 1) / 2, limits);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < s.n; ++u)
    for (Vertex v = u + 1; v < s.n; ++v) edges.push_back({u, v});
  return Graph::from_edges(s.n, edges);
}

Graph paley(const PaleySpec& s, const GenerateLimits& limits) {
  const std::uint64_t q = s.q;
  check_edge_budget(static_cast<double>(q) * static_cast<double>(q - 1) / 4, limits);
  std::vector<char> square(q, 0);
  for (std::uint64_t x = 1; x < q; ++x) square[x * x % q] = 1;
  std::vector<Edge> edges;
  for (Vertex u = 0; u < q; ++u)
    for (Vertex v = u + 1; v < q; ++v)
      if (square[v - u]) edges.push_back({u, v});
  return Graph::from_edges(q, edges);
}

Graph perturbed(const PerturbedSpec& s, const GenerateLimits& limits) {
  const Graph base = gnp({s.n, s.p, s.seed}, limits);
  const std::size_t n = s.n;
  std::vector<std::vector<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) adj[v].assign(base.neighbors(v).begin(), base.neighbors(v).end());

  Rng rng(derive_seed(s.seed, 1));
  const std::size_t picks = std::min(n, ceil_count(s.vertex_fraction * static_cast<double>(n)));
  const auto shift = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(s.degree_shift * static_cast<double>(n) * s.p)));

  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  auto link = [&](Vertex a, Vertex b) {
    adj[a].insert(std::lower_bound(adj[a].begin(), adj[a].end(), b), b);
    adj[b].insert(std::lower_bound(adj[b].begin(), adj[b].end(), a), a);
  };
  auto unlink = [&](Vertex a, Vertex b) {
    adj[a].erase(std::lower_bound(adj[a].begin(), adj[a].end(), b));
    adj[b].erase(std::lower_bound(adj[b].begin(), adj[b].end(), a));
  };
  for (std::size_t i = 0; i < picks; ++i) {
    std::swap(pool[i], pool[i + rng.below(n - i)]);
    const Vertex v = pool[i];
    if (rng.below(2) == 1) {
      std::size_t added = 0;
      for (std::size_t attempt = 0; attempt < 50 * shift && added < shift; ++attempt) {
        const auto x = static_cast<Vertex>(rng.below(n));
        if (x == v || std::binary_search(adj[v].begin(), adj[v].end(), x)) continue;
        link(v, x);
        ++added;
      }
    } else {
      for (std::size_t k = 0; k < shift && !adj[v].empty(); ++k) unlink(v, adj[v][rng.below(adj[v].size())]);
    }
  }

  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : adj[u])
      if (u < v) edges.push_back({u, v});
  check_edge_budget(static_cast<double>(edges.size()), limits);
  return Graph::from_edges(n, edges);
}

Graph star(const StarSpec& s) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < s.n; ++v) edges.push_back({0, v});
  return Graph::from_edges(s.n, edges);
}

Graph path(const PathSpec& s) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < s.n; ++v) edges.push_back({v - 1, v});
  return Graph::from_edges(s.n, edges);
}

Graph cycle(const CycleSpec& s) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < s.n; ++v) edges.push_back({v - 1, v});
  edges.push_back({0, static_cast<Vertex>(s.n - 1)});
  return Graph::from_edges(s.n, edges);
}

}  // namespace

bool is_prime(std::uint64_t q) noexcept {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

void validate(const GeneratorSpec& spec) {
  auto fail = [](const std::string& why) { throw Error(Errc::invalid_spec, why); };
  std::visit(Overloaded{
                 [&](const GnpSpec& s) {
                   if (!valid_density(s.p)) fail("gnp needs 0 < p < 1, got " + format_double(s.p));
                 },
                 [&](const CompleteSpec&) {},
                 [&](const PaleySpec& s) {
                   if (!is_prime(s.q) || s.q % 4 != 1)
                     fail("paley needs a prime q = 1 mod 4, got " + std::to_string(s.q));
                 },
                 [&](const PerturbedSpec& s) {
                   if (!valid_density(s.p)) fail("perturbed needs 0 < p < 1, got " + format_double(s.p));
                   if (s.n < 2) fail("perturbed needs n >= 2");
                   if (!(s.vertex_fraction >= 0 && s.vertex_fraction <= 1)) fail("perturbed fraction must be in [0, 1]");
                   if (!(s.degree_shift >= 0)) fail("perturbed shift must be >= 0");
                 },
                 [&](const StarSpec& s) {
                   if (s.n < 1) fail("star needs n >= 1");
                 },
                 [&](const PathSpec&) {},
                 [&](const CycleSpec& s) {
                   if (s.n < 3) fail("cycle needs n >= 3");
                 },
                 [&](const FileSpec& s) {
                   if (s.path.empty()) fail("file source needs a path");
                 },
             },
             spec);
}

Graph generate(const GeneratorSpec& spec, const GenerateLimits& limits) {
  validate(spec);
  return std::visit(Overloaded{
                        [&](const GnpSpec& s) { return gnp(s, limits); },
                        [&](const CompleteSpec& s) { return complete(s, limits); },
                        [&](const PaleySpec& s) { return paley(s, limits); },
                        [&](const PerturbedSpec& s) { return perturbed(s, limits); },
                        [&](const StarSpec& s) { return star(s); },
                        [&](const PathSpec& s) { return path(s); },
                        [&](const CycleSpec& s) { return cycle(s); },
                        [&](const FileSpec& s) { return load_edge_list(s.path); },
                    },
                    spec);
}

namespace {

class KeyValues {
 public:
  KeyValues(std::string_view kind, std::string_view body) : kind_(kind) {
    while (!body.empty()) {
      const auto comma = body.find(',');
      const auto item = body.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0)
        throw Error(Errc::invalid_spec, "expected key=value in '" + std::string(item) + "'");
      values_[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
      body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    }
  }

  template <class T>
  T required(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) throw Error(Errc::invalid_spec, kind_ + " needs '" + key + "'");
    T value = convert<T>(key, it->second);
    values_.erase(it);
    return value;
  }

  template <class T>
  T optional(const std::string& key, T fallback) {
    return values_.contains(key) ? required<T>(key) : fallback;
  }

  void finish() const {
    if (!values_.empty()) throw Error(Errc::invalid_spec, kind_ + " does not take '" + values_.begin()->first + "'");
  }

 private:
  template <class T>
  T convert(const std::string& key, const std::string& text) const {
    T value{};
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
      throw Error(Errc::invalid_spec, "bad value '" + text + "' for " + kind_ + "." + key);
    return value;
  }

  std::string kind_;
  std::map<std::string, std::string> values_;
};

}  // namespace

GeneratorSpec parse_generator_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string kind(text.substr(0, colon));
  const std::string_view body = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (kind == "file" || kind == "from_file") {
    if (body.empty()) throw Error(Errc::invalid_spec, "file source needs a path");
    return FileSpec{std::filesystem::path(std::string(body))};
  }
  KeyValues kv(kind, body);
  GeneratorSpec spec;
  if (kind == "gnp") {
    spec = GnpSpec{kv.required<std::size_t>("n"), kv.required<double>("p"), kv.optional<std::uint64_t>("seed", 0)};
  } else if (kind == "complete") {
    spec = CompleteSpec{kv.required<std::size_t>("n")};
  } else if (kind == "paley") {
    spec = PaleySpec{kv.required<std::uint64_t>("q")};
  } else if (kind == "perturbed" || kind == "near_regular_perturbed") {
    PerturbedSpec s;
    s.n = kv.required<std::size_t>("n");
    s.p = kv.required<double>("p");
    s.seed = kv.optional<std::uint64_t>("seed", 0);
    s.vertex_fraction = kv.optional<double>("fraction", s.vertex_fraction);
    s.degree_shift = kv.optional<double>("shift", s.degree_shift);
    spec = s;
  } else if (kind == "star") {
    spec = StarSpec{kv.required<std::size_t>("n")};
  } else if (kind == "path") {
    spec = PathSpec{kv.required<std::size_t>("n")};
  } else if (kind == "cycle") {
    spec = CycleSpec{kv.required<std::size_t>("n")};
  } else {
    throw Error(Errc::invalid_spec, "unknown generator kind '" + kind + "'");
  }
  kv.finish();
  validate(spec);
  return spec;
}

std::string describe(const GeneratorSpec& spec) {
  return std::visit(
      Overloaded{
          [](const GnpSpec& s) {
            return "gnp:n=" + std::to_string(s.n) + ",p=" + format_double(s.p) + ",seed=" + std::to_string(s.seed);
          },
          [](const CompleteSpec& s) { return "complete:n=" + std::to_string(s.n); },
          [](const PaleySpec& s) { return "paley:q=" + std::to_string(s.q); },
          [](const PerturbedSpec& s) {
            return "perturbed:n=" + std::to_string(s.n) + ",p=" + format_double(s.p) + ",seed=" +
                   std::to_string(s.seed) + ",fraction=" + format_double(s.vertex_fraction) +
                   ",shift=" + format_double(s.degree_shift);
          },
          [](const StarSpec& s) { return "star:n=" + std::to_string(s.n); },
          [](const PathSpec& s) { return "path:n=" + std::to_string(s.n); },
          [](const CycleSpec& s) { return "cycle:n=" + std::to_string(s.n); },
          [](const FileSpec& s) { return "file:" + s.path.string(); },
      },
      spec);
}

}  // namespace percolab
