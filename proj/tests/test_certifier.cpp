#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "percolab/certifier.hpp"
#include "percolab/error.hpp"
#include "percolab/generators.hpp"

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

}  // namespace

TEST_CASE("complete graph certifies at p = 1") {
  const auto g = generate(CompleteSpec{10});
  const auto prof = certify(g, 1.0, 2, 3);
  CHECK(prof.min_degree == 9);
  CHECK(prof.max_codegree == 8);
  CHECK(prof.a1);
  CHECK(prof.a2);
  CHECK(prof.a3);
  CHECK(prof.exact());
}

TEST_CASE("ties fail the strict inequalities") {
  const auto g = generate(CompleteSpec{10});
  // min degree 9 against n p - a = 9: not strictly greater.
  const auto prof = certify(g, 1.0, 1, 3);
  CHECK(!prof.a1);
  CHECK(prof.a3);
  CHECK(!a3_holds(9, 10, 1.0, -1));
  CHECK(!a2_holds(8, 10, 1.0, -2));
  CHECK(a2_holds(8, 10, 1.0, -1.5));
}

TEST_CASE("star fails A1") {
  const auto prof = certify(generate(StarSpec{5}), 0.5, 1, 1);
  CHECK(prof.min_degree == 1);
  CHECK(!prof.a1);
}

TEST_CASE("gnp certifies at Chernoff-scale slacks") {
  const double n = 5000, p = 0.05;
  const auto g = generate(GnpSpec{5000, p, 1});
  const double a = 4 * std::sqrt(n * p * std::log(n));
  const double b = 4 * std::sqrt(n * p * p * std::log(n));
  const auto prof = certify(g, p, a, b);
  CHECK(prof.a1);
  CHECK(prof.a2);
  CHECK(prof.a3);
}

TEST_CASE("certify rejects densities outside (0, 1]") {
  const auto g = generate(CompleteSpec{4});
  CHECK(code_of([&] { certify(g, 0.0, 1, 1); }) == Errc::invalid_argument);
  CHECK(code_of([&] { certify(g, 1.5, 1, 1); }) == Errc::invalid_argument);
}

TEST_CASE("estimate_slacks on hand-checked graphs") {
  const auto k4 = estimate_slacks(generate(CompleteSpec{4}), 0.5);
  CHECK(k4.a_n > 1.0);
  CHECK(k4.a_n < 1.0 + 1e-9);
  CHECK(k4.b_n > 1.0);
  CHECK(k4.b_n < 1.0 + 1e-9);

  const auto c6 = estimate_slacks(generate(CycleSpec{6}), 1.0 / 3.0);
  CHECK(c6.a_n > 0.0);
  CHECK(c6.a_n < 1e-9);
  CHECK(c6.b_n > 1.0 / 3.0 - 1e-12);
  CHECK(c6.b_n < 1.0 / 3.0 + 1e-9);
  const auto prof = certify(generate(CycleSpec{6}), 1.0 / 3.0, c6.a_n, c6.b_n);
  CHECK(prof.certifies());
}

TEST_CASE("estimated slacks always certify") {
  for (const auto& text : {"gnp:n=2000,p=0.1,seed=11", "gnp:n=300,p=0.3,seed=2", "paley:q=101", "perturbed:n=600,p=0.1,seed=5",
                           "star:n=50", "path:n=40", "complete:n=12"}) {
    CAPTURE(text);
    const auto g = generate(parse_generator_spec(text));
    for (double p : {0.05, 0.1, 0.5}) {
      const auto prof = tight_profile(g, p);
      CHECK(prof.certifies());
      const auto s = estimate_slacks(g, p);
      CHECK(certify(g, p, s.a_n, s.b_n).certifies());
    }
  }
}

TEST_CASE("tight profile needs exact co-degrees") {
  CoDegreeOptions sampled;
  sampled.bitset_max_n = 0;
  sampled.exact_work_cap = 0;
  const auto g = generate(GnpSpec{200, 0.1, 1});
  CHECK(code_of([&] { estimate_slacks(g, 0.1, sampled); }) == Errc::sampled_mode_unavailable);
  const auto prof = certify(g, 0.1, 100, 100, sampled);
  CHECK(!prof.exact());
  CHECK(prof.a2);
}

TEST_CASE("verdicts match a naive recomputation") {
  for (const auto& text : {"gnp:n=200,p=0.1,seed=1", "gnp:n=500,p=0.05,seed=2", "paley:q=61",
                           "perturbed:n=300,p=0.2,seed=3", "star:n=30", "cycle:n=9"}) {
    CAPTURE(text);
    const auto g = generate(parse_generator_spec(text));
    const auto naive = oracle::naive_profile(g);
    const double n = static_cast<double>(g.num_vertices());
    for (double p : {0.05, 0.2}) {
      for (double a : {0.5, 3.0, 12.0}) {
        for (double b : {-1.0, 2.0, 9.0}) {
          const auto prof = certify(g, p, a, b);
          CHECK(prof.min_degree == naive.min_degree);
          CHECK(prof.max_degree == naive.max_degree);
          CHECK(prof.max_codegree == naive.max_codegree);
          CHECK(prof.a1 == (static_cast<double>(naive.min_degree) > n * p - a));
          CHECK(prof.a2 == (static_cast<double>(naive.max_codegree) < n * p * p + b));
          CHECK(prof.a3 == (static_cast<double>(naive.max_degree) < n * p + a));
        }
      }
    }
  }
}

TEST_CASE("certification is monotone in the slacks") {
  const auto g = generate(GnpSpec{400, 0.1, 8});
  const auto s = estimate_slacks(g, 0.1);
  for (double da : {0.0, 0.5, 10.0})
    for (double db : {0.0, 0.25, 7.0}) CHECK(certify(g, 0.1, s.a_n + da, s.b_n + db).certifies());
  const auto base = certify(g, 0.1, s.a_n, s.b_n);
  CHECK(with_slacks(base, s.a_n + 1, s.b_n + 1).certifies());
  CHECK(!with_slacks(base, s.a_n / 2, s.b_n).certifies());
}

TEST_CASE("hereditary degree: complete graph is not falsified") {
  const auto g = generate(CompleteSpec{100});
  HdOptions opts;
  opts.beta = 0.1;
  const auto r = hd_check(g, 1.0, opts);
  CHECK(!r.falsified);
  CHECK(r.worst_ratio <= 1.0);
  CHECK(r.worst_ratio > 0.98);
  CHECK(r.subset_size == 90);
}

TEST_CASE("hereditary degree: star is falsified at its center") {
  const auto g = generate(StarSpec{100});
  HdOptions opts;
  opts.beta = 1.0;
  const auto r = hd_check(g, 0.01, opts);
  CHECK(r.falsified);
  REQUIRE(r.witness);
  CHECK(r.witness->vertex == 0);
  CHECK(r.worst_ratio >= 2.0);
}

TEST_CASE("hereditary degree witnesses replay") {
  const auto g = generate(GnpSpec{3000, 0.1, 1});
  HdOptions opts;
  opts.beta = 0.2;
  const auto r = hd_check(g, 0.1, opts);
  REQUIRE(r.witness);
  const auto mask = hd_subset(g, *r.witness, opts);
  std::size_t size = 0;
  for (char c : mask) size += c != 0;
  CHECK(size == r.witness->subset_size);
  CHECK(mask[r.witness->vertex]);
  const auto d = degrees_into(g, mask);
  CHECK(d[r.witness->vertex] == r.witness->degree_in_subset);
  CHECK(r.worst_ratio == doctest::Approx(static_cast<double>(r.witness->degree_in_subset) / (0.1 * static_cast<double>(size))));
  CHECK(r.falsified == (r.worst_ratio >= 1.2));
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (mask[v]) CHECK(static_cast<double>(d[v]) <= r.worst_ratio * 0.1 * static_cast<double>(size) + 1e-9);
}

TEST_CASE("hereditary degree at beta = 0.2 fails on gnp(3000, 0.1) through the maximum degree alone") {
  const auto g = generate(GnpSpec{3000, 0.1, 1});
  CHECK(static_cast<double>(degree_range(g).max) >= 1.2 * 0.1 * 3000);
  HdOptions opts;
  opts.beta = 0.2;
  CHECK(hd_check(g, 0.1, opts).falsified);
}

TEST_CASE("hereditary degree: uniform subsets of gnp do not falsify") {
  const auto g = generate(GnpSpec{3000, 0.1, 1});
  HdOptions opts;
  opts.beta = 0.3;
  opts.adversarial_roots = 0;
  const auto r = hd_check(g, 0.1, opts);
  CHECK(!r.falsified);
  CHECK(r.adversarial_subsets == 0);
  CHECK(r.trials == 50);
}

TEST_CASE("hereditary degree with U = V and a large beta is never falsified") {
  for (const auto& text : {"gnp:n=500,p=0.1,seed=4", "star:n=40", "paley:q=53"}) {
    CAPTURE(text);
    const auto g = generate(parse_generator_spec(text));
    const double p = 0.1;
    const double beta = static_cast<double>(degree_range(g).max) / (p * static_cast<double>(g.num_vertices()));
    HdOptions opts;
    opts.subset_fraction = 1.0;
    opts.beta = beta;
    opts.trials = 3;
    CHECK(!hd_check(g, p, opts).falsified);
  }
}

TEST_CASE("hereditary degree option errors") {
  const auto g = generate(CompleteSpec{10});
  HdOptions opts;
  opts.subset_fraction = 0.5;
  CHECK(code_of([&] { hd_check(g, 0.5, opts); }) == Errc::subset_too_small);
  opts.subset_fraction = 0.95;
  opts.trials = 0;
  CHECK(code_of([&] { hd_check(g, 0.5, opts); }) == Errc::invalid_argument);
}

TEST_CASE("hereditary degree does not depend on the thread count") {
  const auto g = generate(GnpSpec{1000, 0.05, 6});
  HdOptions a, b;
  a.threads = 1;
  b.threads = 3;
  const auto ra = hd_check(g, 0.05, a);
  const auto rb = hd_check(g, 0.05, b);
  CHECK(ra.worst_ratio == rb.worst_ratio);
  CHECK(ra.witness->vertex == rb.witness->vertex);
}
