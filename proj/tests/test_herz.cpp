#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lhz/corpus.hpp"
#include "lhz/herz.hpp"
#include "oracles.hpp"

using namespace lhz;

namespace {

std::vector<RadialStepFunction> corpus(std::size_t n, std::uint64_t seed, int dim = 1) {
  CorpusOptions o;
  o.size = n;
  o.seed = seed;
  o.dim = dim;
  return generate_corpus(o).radial;
}

RadialStepFunction chi_annulus(int u, int dim = 1) {
  return RadialStepFunction::shell_indicator(dim, annulus_inner_radius(u), annulus_outer_radius(u));
}

// Herz norm from plain L^p per annulus; independent of the Lorentz code.
double herz_oracle(const RadialStepFunction& f, double a, double p, double q) {
  double acc = 0.0;
  for (int u = -1; u <= 12; ++u) {
    const auto piece = f.restricted(annulus_inner_radius(u), annulus_outer_radius(u));
    if (piece.is_zero()) continue;
    const double s = std::exp2(u * a) * oracle::lp(piece, p);
    acc = std::isinf(q) ? std::max(acc, s) : acc + std::pow(s, q);
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

}  // namespace

TEST_CASE("annulus geometry") {
  CHECK(annulus_inner_radius(-1) == 0.0);
  CHECK(annulus_outer_radius(-1) == 0.5);
  CHECK(annulus_inner_radius(3) == 4.0);
  CHECK(annulus_measure(1, -1) == 1.0);
  for (int u = 0; u < 10; ++u) CHECK(annulus_measure(1, u) == std::exp2(u));
  CHECK(annulus_measure(2, 1) == doctest::Approx(std::numbers::pi * 3.0));
  CHECK(annulus_index(0.0) == -1);
  CHECK(annulus_index(0.5) == 0);
  CHECK(annulus_index(0.99) == 0);
  CHECK(annulus_index(1.0) == 1);
  CHECK(annulus_index(1000.0) == 10);
}

TEST_CASE("hl_norm examples") {
  const auto f = chi_annulus(-1).scaled(2.0) + chi_annulus(0);
  CHECK(hl_norm(f, {1.0, 2.0, 1.0, 2.0}) == 2.0);

  for (double a : {-0.5, 0.0, 1.0})
    for (double q : {1.0, 2.0, kInf})
      for (double p : {1.5, 2.0, 4.0})
        for (double r : {1.0, 2.0, kInf}) {
          const double expected = (std::isinf(r) ? 1.0 : std::pow(p / r, 1.0 / r)) * 1.0;
          CHECK(hl_norm(chi_annulus(0), {a, p, q, r}) == doctest::Approx(expected).epsilon(1e-14));
        }
  CHECK(hl_norm(RadialStepFunction::zero(), {0.0, 2.0, 2.0, 2.0}) == 0.0);
}

TEST_CASE("identity case is the L^p norm") {
  for (int dim : {1, 2, 3})
    for (const auto& f : corpus(30, 40 + dim, dim))
      for (double p : {1.0, 1.5, 2.0, 4.0})
        CHECK(hl_norm(f, {0.0, p, p, p}) == doctest::Approx(oracle::lp(f, p)).epsilon(1e-12));
}

TEST_CASE("r = p is the Herz norm") {
  for (const auto& f : corpus(40, 7))
    for (double a : {-0.4, 0.0, 0.7})
      for (double p : {1.5, 3.0})
        for (double q : {1.0, 2.0, kInf})
          CHECK(hl_norm(f, {a, p, q, p}) == doctest::Approx(herz_oracle(f, a, p, q)).epsilon(1e-12));
}

TEST_CASE("starred flag and parameter gating") {
  const auto f = chi_annulus(1);
  CHECK(hl_norm(f, {0.0, 2.0, 1.0, 1.0}, true) == doctest::Approx(2.0 * hl_norm(f, {0.0, 2.0, 1.0, 1.0})));
  CHECK_THROWS_AS(hl_norm(f, {0.0, 0.5, 1.0, 1.0}, true), DomainError);
  CHECK_THROWS_AS(HerzParams(0.0, kInf, 1.0, 2.0), DomainError);
}

TEST_CASE("disjoint support additivity at q = 1") {
  const auto c = corpus(30, 3);
  for (const auto& f : c) {
    const auto shifted = RadialStepFunction::shell_indicator(1, 64.0, 100.0, 2.5);
    CHECK(hl_norm(f + shifted, {0.3, 2.0, 1.0, 1.5}) ==
          doctest::Approx(hl_norm(f, {0.3, 2.0, 1.0, 1.5}) + hl_norm(shifted, {0.3, 2.0, 1.0, 1.5})).epsilon(1e-14));
  }
}

TEST_CASE("quasi-norm probe") {
  const auto c = corpus(25, 19);
  const auto starred = quasi_constant_probe(c, {1.0, 2.0, 1.0, 2.0}, true);
  CHECK(starred.max_ratio <= 1.0 + 1e-9);
  const auto quasi = quasi_constant_probe(c, {0.0, 2.0, 2.0, 4.0});
  CHECK(std::isfinite(quasi.max_ratio));
  CHECK(quasi.max_ratio >= 0.5);
}

TEST_CASE("bfs conditions") {
  AnnulusMeasureSequence finite;
  finite.head = {0.5, 1.0, 0.0, 2.0};
  const auto r = bfs_condition_check(finite, {0.5, 2.0, 2.0, 2.0}, 10);
  CHECK(r.verdict == GrowthVerdict::finite);
  CHECK(std::isfinite(r.partial_a.back()));
  CHECK(std::isfinite(r.partial_b.back()));

  AnnulusMeasureSequence tail;
  tail.tail = AnnulusMeasureSequence::PowerTail{2.0, 2.0, 1};
  const auto g = bfs_condition_check(tail, {1.0, 2.0, 2.0, 2.0}, 20);
  CHECK(g.verdict_a == GrowthVerdict::growing);

  // a = 0, p = q: condition (a) partial sums are bounded by mu(E)
  AnnulusMeasureSequence head;
  head.head = {0.25, 0.5, 1.0, 3.0, 0.5};
  const auto z = bfs_condition_check(head, {0.0, 2.0, 2.0, 2.0}, 6);
  for (double s : z.partial_a) CHECK(s <= 5.25 + 1e-12);

  AnnulusMeasureSequence bad;
  bad.head = {2.0};  // exceeds mu(A_{-1}) = 1
  CHECK_THROWS_AS(bfs_condition_check(bad, {0.0, 2.0, 2.0, 2.0}, 3), DomainError);
  CHECK_THROWS_AS(bfs_condition_check(head, {0.0, 1.0, 2.0, 2.0}, 3), DomainError);
}

TEST_CASE("divergence example") {
  const auto r = divergence_example({1.0, 1.0, 1.0, 1.0}, 5);
  const double expected[] = {4.0, 6.0, 7.0 + 7.0 / 9.0, 9.0 + 7.0 / 9.0, 12.0 + 76.0 / 225.0};
  REQUIRE(r.partial_sums.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(r.partial_sums[i] == doctest::Approx(expected[i]).epsilon(1e-14));
  for (std::size_t i = 0; i < r.norm_partial.size(); ++i)
    CHECK(r.norm_partial[i] == doctest::Approx(r.partial_sums[i]).epsilon(1e-12));
  CHECK(r.eventually_increasing);
  CHECK(r.verdict == GrowthVerdict::growing);
  CHECK(r.measure_total == doctest::Approx(std::numbers::pi * std::numbers::pi / 3.0));
  CHECK(r.measure_partial < r.measure_total);

  // term ratio 2^{aq}(u/(u+1))^{2q/p} exceeds 1 from some u on whenever a > 0
  for (double a : {0.1, 0.5, 2.0}) {
    const auto s = divergence_example({a, 2.0, 1.0, 2.0}, 60);
    CHECK(s.eventually_increasing);
    for (int u = s.increasing_from; u < 60; ++u) CHECK(s.terms[u] > s.terms[u - 1]);
  }
  const auto set = divergence_example_set(3);
  CHECK(set.support_measure() == doctest::Approx(2.0 * (1.0 + 0.25 + 1.0 / 9.0)).epsilon(1e-15));
}

TEST_CASE("Hoelder inequality") {
  const auto a0 = chi_annulus(0);
  for (double a : {-0.4, 0.0, 0.4}) {
    const auto eq = hl_holder_check(a0, a0, {a, 2.0, 2.0, 2.0});
    CHECK(eq.integral == 1.0);
    CHECK(eq.bound == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eq.pass);
  }
  CHECK(hl_holder_check(a0, RadialStepFunction::zero(), {0.0, 2.0, 2.0, 2.0}).integral == 0.0);
  const auto c = corpus(40, 23);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    const double as[] = {-0.4, 0.0, 0.4}, qs[] = {1.0, 2.0, kInf};
    const HerzParams hp(as[rng() % 3], 1.5 + static_cast<double>(rng() % 3), qs[rng() % 3], qs[rng() % 3]);
    const auto h = hl_holder_check(c[rng() % c.size()], c[rng() % c.size()], hp);
    CHECK(h.pass);
  }
}

TEST_CASE("embeddings") {
  SUBCASE("B: weight monotone on a single annulus") {
    const auto f = chi_annulus(3);
    const auto e = embedding_check(EmbeddingVariant::B, f, {1.0, 2.0, 2.0, 2.0}, {0.0, 2.0, 2.0, 2.0});
    CHECK(e.pass);
    CHECK(e.lhs == doctest::Approx(std::exp2(-3.0) * e.source).epsilon(1e-15));
  }
  SUBCASE("D: l1 into l2 on the scores") {
    for (const auto& f : corpus(30, 5)) {
      const auto e = embedding_check(EmbeddingVariant::D, f, {0.0, 2.0, 1.0, 2.0}, {0.0, 2.0, 2.0, 2.0});
      CHECK(e.pass);
      CHECK(e.constant <= 1.0 + 1e-15);
    }
  }
  SUBCASE("C: weak path on chi_{A_0}") {
    const auto f = chi_annulus(0);
    const auto e = embedding_check(EmbeddingVariant::C, f, {0.0, 4.0, 2.0, kInf}, {0.0, 2.0, 2.0, 2.0});
    CHECK(e.pass);
    // lhs <= mu(A_0)^{1/4} / (1/2)^{1/2} * ||f||_{L^{4,inf}}, with mu(A_0) = 1
    CHECK(e.lhs <= std::sqrt(2.0) * 1.0 + 1e-12);
  }
  SUBCASE("A: finiteness propagates in r") {
    for (const auto& f : corpus(30, 15)) {
      const auto e = embedding_check(EmbeddingVariant::A, f, {0.3, 2.0, 2.0, 1.0}, {0.3, 2.0, 2.0, 4.0});
      CHECK(e.pass);
      CHECK(std::isfinite(e.lhs));
    }
  }
  SUBCASE("wrong parameter shapes are rejected") {
    CHECK_THROWS_AS(embedding_check(EmbeddingVariant::A, chi_annulus(0), {0.3, 2.0, 2.0, 4.0}, {0.3, 2.0, 2.0, 1.0}),
                    DomainError);
    CHECK_THROWS_AS(embedding_check(EmbeddingVariant::B, chi_annulus(0), {0.0, 2.0, 2.0, 2.0}, {1.0, 2.0, 2.0, 2.0}),
                    DomainError);
  }
}
