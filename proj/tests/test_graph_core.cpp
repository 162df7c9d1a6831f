#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "percolab/codegree.hpp"
#include "percolab/edge_list.hpp"
#include "percolab/error.hpp"
#include "percolab/generators.hpp"
#include "percolab/graph.hpp"

using namespace percolab;

namespace {

Graph path3() {
  const std::vector<Edge> e{{0, 1}, {1, 2}};
  return Graph::from_edges(3, e);
}

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a percolab::Error");
  return Errc::invalid_argument;
}

void check_invariants(const Graph& g) {
  std::size_t total = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto nb = g.neighbors(v);
    total += nb.size();
    for (std::size_t i = 0; i < nb.size(); ++i) {
      CHECK(nb[i] != v);
      if (i) CHECK(nb[i - 1] < nb[i]);
      CHECK(g.adjacent(nb[i], v));
    }
  }
  CHECK(total == 2 * g.num_edges());
}

}  // namespace

TEST_CASE("complete graph on four vertices") {
  const auto g = generate(CompleteSpec{4});
  CHECK(g.num_edges() == 6);
  for (Vertex v = 0; v < 4; ++v) CHECK(degree(g, v) == 3);
  CHECK(co_degree(g, 0, 1) == 2);
  check_invariants(g);
}

TEST_CASE("path degrees and co-degrees") {
  const auto g = path3();
  CHECK(degree(g, 1) == 2);
  CHECK(co_degree(g, 0, 2) == 1);
  CHECK(code_of([&] { degree(g, 3); }) == Errc::vertex_out_of_range);
  CHECK(code_of([&] { co_degree(g, 1, 1); }) == Errc::same_vertex);
  CHECK(code_of([&] { co_degree(g, 0, 7); }) == Errc::vertex_out_of_range);
}

TEST_CASE("paley graphs match brute-force quadratic residues") {
  const auto g5 = generate(PaleySpec{5});
  CHECK(g5.num_edges() == 5);
  for (Vertex v = 0; v < 5; ++v) {
    CHECK(degree(g5, v) == 2);
    CHECK(g5.adjacent(v, (v + 1) % 5));
  }

  for (std::uint64_t q : {5u, 13u, 17u, 29u, 37u, 41u, 53u, 61u, 73u, 89u, 97u, 101u}) {
    CAPTURE(q);
    const auto g = generate(PaleySpec{q});
    const auto residues = oracle::quadratic_residues(q);
    check_invariants(g);
    for (Vertex x = 0; x < q; ++x) {
      CHECK(degree(g, x) == (q - 1) / 2);
      for (Vertex y = 0; y < q; ++y)
        if (x != y) CHECK(g.adjacent(x, y) == (residues.count((x + q - y) % q) > 0));
    }
    std::set<std::size_t> values;
    for (Vertex x = 0; x < q; ++x)
      for (Vertex y = x + 1; y < q; ++y) values.insert(co_degree(g, x, y));
    CHECK(values.size() == 2);
  }

  const auto g13 = generate(PaleySpec{13});
  CHECK(g13.adjacent(0, 1));
  CHECK(co_degree(g13, 0, 1) == 2);
  CHECK(!g13.adjacent(0, 2));
  CHECK(co_degree(g13, 0, 2) == 3);
}

TEST_CASE("gnp matches an independent regeneration") {
  const auto g = generate(GnpSpec{1000, 0.1, 7});
  const auto ref = oracle::gnp_edges(1000, 0.1, 7);
  CHECK(g.num_edges() == ref.size());
  for (const auto& [w, v] : ref) CHECK(g.adjacent(static_cast<Vertex>(w), static_cast<Vertex>(v)));
  check_invariants(g);

  // Density sanity: within 5 standard deviations.
  const double mean = 0.1 * 1000 * 999 / 2;
  CHECK(std::abs(static_cast<double>(g.num_edges()) - mean) < 5 * std::sqrt(mean));
}

TEST_CASE("generation is a pure function of the spec") {
  for (const auto& text : {"gnp:n=500,p=0.05,seed=3", "perturbed:n=400,p=0.1,seed=9", "paley:q=29", "star:n=7"}) {
    CAPTURE(text);
    const auto spec = parse_generator_spec(text);
    const auto a = generate(spec);
    const auto b = generate(spec);
    CHECK(a == b);
    check_invariants(a);
    CHECK(describe(parse_generator_spec(describe(spec))) == describe(spec));
  }
}

TEST_CASE("perturbed graphs differ from their base by the documented amount") {
  const auto base = generate(GnpSpec{1000, 0.05, 4});
  const auto pert = generate(PerturbedSpec{1000, 0.05, 4, 0.01, 0.1});
  CHECK(!(base == pert));
  std::size_t changed = 0;
  for (Vertex v = 0; v < 1000; ++v)
    if (degree(base, v) != degree(pert, v)) ++changed;
  CHECK(changed >= 5);
}

TEST_CASE("invalid generator specs") {
  CHECK(code_of([] { generate(PaleySpec{7}); }) == Errc::invalid_spec);
  CHECK(code_of([] { generate(PaleySpec{9}); }) == Errc::invalid_spec);
  CHECK(code_of([] { generate(GnpSpec{10, 0.0, 1}); }) == Errc::invalid_spec);
  CHECK(code_of([] { generate(GnpSpec{10, 1.0, 1}); }) == Errc::invalid_spec);
  CHECK(code_of([] { parse_generator_spec("gnp:n=10"); }) == Errc::invalid_spec);
  CHECK(code_of([] { parse_generator_spec("torus:n=10"); }) == Errc::invalid_spec);
  CHECK(code_of([] { generate(GnpSpec{100000, 0.5, 1}, GenerateLimits{1000}); }) == Errc::resource_limit);
  CHECK(code_of([] { generate(CompleteSpec{1000}, GenerateLimits{1000}); }) == Errc::resource_limit);
}

TEST_CASE("max co-degree") {
  const auto k5 = generate(CompleteSpec{5});
  const auto r5 = max_co_degree(k5);
  CHECK(r5.value == 3);
  CHECK(co_degree(k5, r5.u, r5.v) == 3);
  CHECK(r5.mode == CoDegreeMode::exact);

  const auto star = generate(StarSpec{5});
  const auto rs = max_co_degree(star);
  CHECK(rs.value == 1);
  CHECK(rs.u != 0);
  CHECK(rs.v != 0);

  CHECK(code_of([] { max_co_degree(generate(PathSpec{1})); }) == Errc::graph_too_small);

  const auto g = generate(GnpSpec{300, 0.2, 3});
  const auto naive = oracle::naive_max_codegree(g);
  for (std::size_t bitset_cap : {std::size_t{0}, std::size_t{20000}}) {
    CoDegreeOptions options;
    options.bitset_max_n = bitset_cap;
    const auto r = max_co_degree(g, options);
    CHECK(r.value == naive);
    CHECK(r.mode == CoDegreeMode::exact);
    CHECK(co_degree(g, r.u, r.v) == r.value);
  }

  CoDegreeOptions sampled;
  sampled.bitset_max_n = 0;
  sampled.exact_work_cap = 0;
  const auto rsamp = max_co_degree(g, sampled);
  CHECK(rsamp.mode == CoDegreeMode::sampled);
  CHECK(rsamp.value <= naive);
  CHECK(co_degree(g, rsamp.u, rsamp.v) == rsamp.value);
}

TEST_CASE("max co-degree does not depend on the thread count") {
  const auto g = generate(GnpSpec{800, 0.1, 5});
  CoDegreeOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = max_co_degree(g, one);
  const auto b = max_co_degree(g, many);
  CHECK(a.value == b.value);
  CHECK(a.u == b.u);
  CHECK(a.v == b.v);
}

TEST_CASE("co-degree properties on sampled pairs") {
  const auto g = generate(GnpSpec{400, 0.15, 21});
  oracle::Xoshiro rng(99);
  for (int i = 0; i < 2000; ++i) {
    const auto u = static_cast<Vertex>(rng.next() % 400);
    const auto v = static_cast<Vertex>(rng.next() % 400);
    if (u == v) continue;
    const auto c = co_degree(g, u, v);
    CHECK(c == co_degree(g, v, u));
    CHECK(c <= std::min(degree(g, u), degree(g, v)));
  }
}

TEST_CASE("edge list parsing") {
  std::istringstream in("0 1\n1 2\n");
  const auto g = read_edge_list(in);
  CHECK(g == path3());

  std::istringstream header("# n=5\n# comment\n0 1\n");
  CHECK(read_edge_list(header).num_vertices() == 5);

  std::istringstream loop("0 0\n");
  CHECK(code_of([&] { read_edge_list(loop); }) == Errc::non_simple);

  std::istringstream dup("0 1\n2 3\n1 0\n");
  try {
    read_edge_list(dup);
    FAIL("expected NonSimple");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_simple);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  std::istringstream bad("0 1\nx 2\n");
  try {
    read_edge_list(bad);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("edge list round trip is byte-identical") {
  const auto dir = std::filesystem::temp_directory_path() / "percolab_edge_list_test";
  std::filesystem::create_directories(dir);
  const auto first = dir / "k4.txt";
  const auto second = dir / "k4_again.txt";
  save_edge_list(generate(CompleteSpec{4}), first);
  const auto loaded = load_edge_list(first);
  CHECK(loaded == generate(CompleteSpec{4}));
  save_edge_list(loaded, second);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  CHECK(slurp(first) == slurp(second));

  // Trailing isolated vertices survive through the header.
  const std::vector<Edge> e{{0, 1}};
  const auto sparse = Graph::from_edges(4, e);
  save_edge_list(sparse, first);
  CHECK(load_edge_list(first) == sparse);
  std::filesystem::remove_all(dir);

  CHECK(code_of([&] { load_edge_list(dir / "missing.txt"); }) == Errc::io_error);
}

TEST_CASE("connected components of the whole graph") {
  const std::vector<Edge> e{{0, 1}, {2, 3}, {3, 4}};
  const auto g = Graph::from_edges(6, e);
  const auto comps = connected_components(g);
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == std::vector<Vertex>{0, 1});
  CHECK(comps[1] == std::vector<Vertex>{2, 3, 4});
  CHECK(comps[2] == std::vector<Vertex>{5});
}
