#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "percolab/certifier.hpp"
#include "percolab/error.hpp"
#include "percolab/format.hpp"
#include "percolab/generators.hpp"
#include "percolab/lemma_lab.hpp"
#include "percolab/rng.hpp"

using namespace percolab;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a percolab::Error");
  return Errc::invalid_argument;
}

std::vector<Vertex> random_set(std::size_t n, std::size_t size, Rng& rng) {
  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  for (std::size_t i = 0; i < size; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

TEST_CASE("inclusion-exclusion hand examples") {
  const auto tri = generate(CompleteSpec{3});
  const std::vector<Vertex> h01{0, 1};
  CHECK(inclusion_exclusion_lower_bound(tri, h01) == 1);
  CHECK(external_neighborhood_size(tri, h01) == 1);

  const auto k4 = generate(CompleteSpec{4});
  const std::vector<Vertex> h012{0, 1, 2};
  CHECK(inclusion_exclusion_lower_bound(k4, h012) == 0);
  CHECK(external_neighborhood_size(k4, h012) == 1);
  const auto report = inclusion_exclusion_check(k4, h012);
  CHECK(report.passed);
  CHECK(report.measured == 1);
  CHECK(report.bound == 0);
}

TEST_CASE("inclusion-exclusion errors") {
  const auto g = generate(CompleteSpec{4});
  CHECK(code_of([&] { inclusion_exclusion_lower_bound(g, {}); }) == Errc::empty_set);
  const std::vector<Vertex> rep{1, 1};
  CHECK(code_of([&] { inclusion_exclusion_lower_bound(g, rep); }) == Errc::invalid_argument);
  const std::vector<Vertex> out{1, 4};
  CHECK(code_of([&] { inclusion_exclusion_lower_bound(g, out); }) == Errc::vertex_out_of_range);
}

TEST_CASE("inclusion-exclusion on random sets matches the oracles") {
  const auto g = generate(GnpSpec{200, 0.1, 1});
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto h = random_set(200, 2 + rng.below(4), rng);
    const auto lb = inclusion_exclusion_lower_bound(g, h);
    const auto exact = external_neighborhood_size(g, h);
    CHECK(lb == oracle::bonferroni(g, h));
    CHECK(exact == oracle::neighborhood(g, h));
    CHECK(lb <= static_cast<long long>(exact));
  }
}

TEST_CASE("expansion bound arithmetic") {
  // n p m = 40, n p^2 m^2 / 2 = 4.
  CHECK(expansion_bound(200, 0.1, 2, 0.5) == doctest::Approx(18.0));
}

TEST_CASE("expansion precondition") {
  const auto g = generate(CompleteSpec{10});
  const auto prof = certify(g, 1.0, 2, 3);
  for (std::size_t m = 1; m <= 3; ++m) {
    ExpansionOptions opts;
    opts.m = m;
    CHECK(code_of([&] { expansion_check(g, prof, opts); }) == Errc::precondition_violated);
  }
  const auto small = generate(GnpSpec{100, 0.01, 1});
  ExpansionOptions opts;
  opts.m = 2;  // m p = 0.02 < c = 0.027
  CHECK(code_of([&] { expansion_check(small, certify(small, 0.01, 5, 5), opts); }) == Errc::precondition_violated);
}

TEST_CASE("expansion: star counterexample") {
  const auto g = generate(StarSpec{200});
  const auto prof = certify(g, 0.1, 1, 1);
  ExpansionOptions opts;
  opts.m = 2;
  const auto r = expansion_check(g, prof, opts);
  CHECK(!r.passed);
  REQUIRE(r.witness);
  CHECK(r.witness->vertices == std::vector<Vertex>{1, 2});
  CHECK(r.witness->measured == 1);
  CHECK(r.witness->bound == doctest::Approx(18.0));
  CHECK(external_neighborhood_size(g, r.witness->vertices) == 1);

  opts.mode = ExpansionMode::sampled;
  opts.sampled_sets = 50;
  const auto s = expansion_check(g, prof, opts);
  CHECK(!s.passed);
  REQUIRE(s.witness);
  CHECK(static_cast<double>(external_neighborhood_size(g, s.witness->vertices)) < s.witness->bound);
}

TEST_CASE("expansion exhaustive agrees with naive enumeration") {
  for (const auto& text : {"gnp:n=50,p=0.1,seed=1", "gnp:n=60,p=0.1,seed=2", "perturbed:n=60,p=0.1,seed=4"}) {
    CAPTURE(text);
    const auto g = generate(parse_generator_spec(text));
    const auto prof = tight_profile(g, 0.1);
    for (std::size_t m : {2u, 3u}) {
      for (double alpha0 : {0.5, 0.2, 0.01}) {
        ExpansionOptions opts;
        opts.m = m;
        opts.alpha0 = alpha0;
        const double bound = expansion_bound(g.num_vertices(), 0.1, m, alpha0);
        const auto naive = oracle::naive_expansion(g, m, bound);
        const auto r = expansion_check(g, prof, opts);
        CHECK(r.checked_count == naive.sets);
        CHECK(r.passed == (naive.violations == 0));
        if (r.passed) {
          CHECK(r.measured == naive.min_neighborhood);
        } else {
          REQUIRE(r.witness);
          CHECK(r.witness->vertices.size() == m);
          CHECK(static_cast<double>(oracle::neighborhood(g, r.witness->vertices)) < bound);
        }
        opts.threads = 1;
        const auto serial = expansion_check(g, prof, opts);
        CHECK(serial.passed == r.passed);
        CHECK(serial.measured == r.measured);
        if (r.witness) CHECK(serial.witness->vertices == r.witness->vertices);
      }
    }
  }
}

TEST_CASE("expansion witness is the first violation in lexicographic order") {
  // Path: {0, 1} has neighborhood {2}, the first set below the bound.
  const auto g = generate(PathSpec{30});
  const auto prof = certify(g, 0.1, 5, 5);
  ExpansionOptions opts;
  opts.m = 2;
  opts.alpha0 = 0.1;
  const auto r = expansion_check(g, prof, opts);
  CHECK(!r.passed);
  CHECK(r.witness->vertices == std::vector<Vertex>{0, 1});
}

TEST_CASE("expansion combination cap") {
  const auto g = generate(GnpSpec{2000, 0.01, 1});
  ExpansionOptions opts;
  opts.m = 3;
  CHECK(code_of([&] { expansion_check(g, certify(g, 0.01, 5, 5), opts); }) == Errc::combination_overflow);
}

TEST_CASE("expansion sampled mode on gnp") {
  const auto g = generate(GnpSpec{400, 0.1, 3});
  ExpansionOptions opts;
  opts.m = 3;
  opts.mode = ExpansionMode::sampled;
  opts.sampled_sets = 2000;
  const auto r = expansion_check(g, tight_profile(g, 0.1), opts);
  CHECK(r.passed);
  CHECK(r.checked_count == 2000 + 8);
}

TEST_CASE("variance trivial cases") {
  const auto g = generate(GnpSpec{300, 0.1, 2});
  const auto prof = tight_profile(g, 0.1);
  const auto empty = variance_bound_check(g, {}, prof);
  CHECK(empty.passed);
  CHECK(empty.measured == 0);
  CHECK(empty.bound == 0);

  const auto kn = generate(CompleteSpec{40});
  std::vector<Vertex> all(40);
  std::iota(all.begin(), all.end(), Vertex{0});
  // a_n = 1 ties A1 (39 is not > 40 - 1); a_n = 2 certifies.
  CHECK(code_of([&] { variance_bound_check(kn, all, certify(kn, 1.0, 1, 2)); }) == Errc::assumptions_not_certified);
  const auto r = variance_bound_check(kn, all, certify(kn, 1.0, 2, 2));
  CHECK(r.passed);
  CHECK(r.measured == 0);
  CHECK(r.extra.count("remark_bound"));
}

TEST_CASE("variance is exact and bounded on gnp") {
  const auto g = generate(GnpSpec{2000, 0.1, 5});
  const auto prof = tight_profile(g, 0.1);
  Rng rng(17);
  for (int i = 0; i < 10; ++i) {
    const auto size = 500 + rng.below(1501);
    const auto u = random_set(2000, size, rng);
    const auto r = variance_bound_check(g, u, prof);
    const double oracle_var = oracle::two_pass_variance(oracle::degrees_into(g, u));
    CHECK(std::abs(r.measured - oracle_var) <= 1e-9 * std::max(1.0, oracle_var));
    CHECK(r.passed);
    CHECK(r.measured <= r.extra.at("bound_from_assumptions"));
    if (2 * size >= 2000) CHECK(r.extra.at("remark_passed") == 1.0);
  }
}

TEST_CASE("xi count") {
  const auto kn = generate(CompleteSpec{100});
  std::vector<Vertex> all(100);
  std::iota(all.begin(), all.end(), Vertex{0});
  const auto prof = certify(kn, 1.0, 2, 3);
  const auto r = xi_count_check(kn, all, prof, 0.1);
  CHECK(r.passed);
  CHECK(r.measured == 0);

  const std::vector<Vertex> third(all.begin(), all.begin() + 33);
  CHECK(code_of([&] { xi_count_check(kn, third, prof, 0.1); }) == Errc::u_small);
  CHECK(code_of([&] { xi_count_check(kn, all, certify(kn, 1.0, 6, 3), 0.1); }) == Errc::slack_too_large);

  const auto g = generate(GnpSpec{4000, 0.1, 8});
  const auto tight = tight_profile(g, 0.1);
  Rng rng(23);
  for (int i = 0; i < 5; ++i) {
    const auto u = random_set(4000, 2000 + rng.below(2001), rng);
    const auto rep = xi_count_check(g, u, tight, 0.5);
    CHECK(rep.measured == static_cast<double>(oracle::xi_count(g, u, 0.1, 0.5)));
    CHECK(rep.passed);
    CHECK(rep.bound == doctest::Approx(xi_bound(0.1, tight.b_n, 0.5)));
  }
}

TEST_CASE("outer complement") {
  const auto path = generate(PathSpec{5});
  const std::vector<Vertex> c0{0};
  CHECK(outer_complement_size(path, c0) == 3);

  const auto kn = generate(CompleteSpec{30});
  const auto prof = tight_profile(kn, 0.5);
  const std::vector<Vertex> single{7};
  const auto r = outer_complement_check(kn, single, prof, 0.5);
  CHECK(r.passed);
  CHECK(r.measured == 0);

  const auto g = generate(GnpSpec{3000, 0.1, 9});
  const auto tight = tight_profile(g, 0.1);
  const auto c = grow_connected_set(g, 17, ceil_count(0.3 / 0.1));
  CHECK(c.size() == 3);
  CHECK(induces_connected(g, c));
  const auto rep = outer_complement_check(g, c, tight, 0.3);
  CHECK(rep.passed);
  CHECK(rep.measured == static_cast<double>(3000 - oracle::neighborhood(g, c) - 3));
  CHECK(rep.extra.at("statement_bound") > rep.bound);
  CHECK(rep.extra.at("statement_passed") == 1.0);

  const std::vector<Vertex> apart{0, 2};
  const auto p5 = certify(path, 0.5, 5, 5);
  CHECK(code_of([&] { outer_complement_check(path, apart, p5, 0.5); }) == Errc::not_connected);
  const std::vector<Vertex> line{0, 1, 2, 3};
  CHECK(code_of([&] { outer_complement_check(path, line, p5, 0.5); }) == Errc::size_mismatch);
  CHECK(code_of([&] { outer_complement_check(path, {}, p5, 0.5); }) == Errc::empty_set);
  CHECK(code_of([&] { outer_complement_check(path, c0, certify(path, 0.5, 0.1, 5), 0.5); }) ==
        Errc::assumptions_not_certified);
}

TEST_CASE("outer complement bound variants") {
  const double n = 1000, p = 0.05, a = 10, b = 2, eps = 0.3;
  const double ln = a / n + eps / 2 * b / (n * p * p);
  CHECK(outer_complement_ln(1000, p, a, b, eps) == doctest::Approx(ln));
  CHECK(outer_complement_bound(1000, p, a, b, eps) == doctest::Approx(n * (1 - eps + eps * eps / 2 + eps * ln)));
  CHECK(outer_complement_statement_bound(1000, p, a, b, eps) ==
        doctest::Approx(n * (1 - eps + eps * eps + eps * ln)));
}

TEST_CASE("grow connected set respects the confining set") {
  const auto g = generate(PathSpec{10});
  const std::vector<Vertex> within{3, 4, 5, 8};
  CHECK(grow_connected_set(g, 4, 10, within) == std::vector<Vertex>{3, 4, 5});
  CHECK(grow_connected_set(g, 0, 3) == std::vector<Vertex>{0, 1, 2});
  CHECK(grow_connected_set(g, 0, 3, within).empty());
}

TEST_CASE("xi bound turns negative once b_n < -p / 3") {
  // Paley co-degrees sit below n p^2, so the tight b_n is negative.
  const auto g = generate(PaleySpec{1009});
  const auto prof = tight_profile(g, 0.5);
  REQUIRE(prof.b_n < -0.5 / 3);
  CHECK(xi_bound(0.5, prof.b_n, 0.5) < 0);
  std::vector<Vertex> all(1009);
  std::iota(all.begin(), all.end(), Vertex{0});
  const auto r = xi_count_check(g, all, prof, 0.5);
  CHECK(r.measured == 0);
  CHECK(!r.passed);
}
