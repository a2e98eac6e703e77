#include <doctest.h>

#include <cmath>
#include <random>

#include "lhz/corpus.hpp"
#include "lhz/lorentz.hpp"
#include "oracles.hpp"

using namespace lhz;

namespace {

RadialStepFunction indicator(double mu) {
  const double one = 1.0;
  return RadialStepFunction::from_shell_measures(1, {&mu, 1}, {&one, 1});
}

RadialStepFunction two_shell() {
  const double m[] = {0.5, 2.0}, v[] = {3.0, 1.0};
  return RadialStepFunction::from_shell_measures(1, m, v);
}

std::vector<RadialStepFunction> corpus(std::size_t n, std::uint64_t seed) {
  CorpusOptions o;
  o.size = n;
  o.seed = seed;
  return generate_corpus(o).radial;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(LorentzParams(kInf, 2.0), DomainError);
  CHECK_THROWS_AS(LorentzParams(0.0, 2.0), DomainError);
  CHECK_THROWS_AS(LorentzParams(2.0, -1.0), DomainError);
  CHECK_NOTHROW(LorentzParams(kInf, kInf));
  CHECK(LorentzParams(2.0, 1.0).starred_admissible());
  CHECK_FALSE(LorentzParams(1.0, 1.0).starred_admissible());
  CHECK(LorentzParams(1.0, 1.0).starred_normed());
  CHECK_FALSE(LorentzParams(0.5, 1.0).starred_normed());
  CHECK(conjugate_exponent(2.0) == 2.0);
  CHECK(conjugate_exponent(1.0) == kInf);
  CHECK(conjugate_exponent(kInf) == 1.0);
  CHECK_THROWS_AS(lorentz_star_norm(indicator(1.0), {0.5, 1.0}), DomainError);
}

TEST_CASE("quasi-norm examples") {
  CHECK(lorentz_norm(indicator(1.0), {2.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(lorentz_norm(indicator(1.0), {2.0, kInf}) == 1.0);
  const double expected = 3.0 * 2.0 * std::sqrt(0.5) + 1.0 * 2.0 * (std::sqrt(2.5) - std::sqrt(0.5));
  CHECK(lorentz_norm(two_shell(), {2.0, 1.0}) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(5.9906).epsilon(1e-4));
  CHECK(lorentz_norm(two_shell(), {2.0, 1.0}) ==
        doctest::Approx(oracle::lorentz_by_quadrature(two_shell(), 2.0, 1.0, false)).epsilon(1e-10));
  CHECK(lorentz_norm(RadialStepFunction::zero(), {2.0, 1.0}) == 0.0);
}

TEST_CASE("indicator closed forms") {
  for (double mu : {0.25, 1.0, 9.0})
    for (double p : {1.5, 2.0, 4.0})
      for (double r : {1.0, 2.0, 4.0, kInf}) {
        const double expected = (std::isinf(r) ? 1.0 : std::pow(p / r, 1.0 / r)) * std::pow(mu, 1.0 / p);
        CHECK(lorentz_norm(indicator(mu), {p, r}) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(indicator_lorentz_norm(mu, {p, r}) == doctest::Approx(expected).epsilon(1e-12));
      }
}

TEST_CASE("starred examples") {
  CHECK(lorentz_star_norm(indicator(1.0), {2.0, 1.0}) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(lorentz_star_norm(indicator(1.0), {2.0, 2.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(lorentz_star_norm(RadialStepFunction::zero(), {2.0, 2.0}) == 0.0);
  // L^{1,1}: tail diverges for nonzero f
  CHECK(std::isinf(lorentz_star_norm(indicator(1.0), {1.0, 1.0})));
}

TEST_CASE("quasi and starred norms against quadrature") {
  for (const auto& f : corpus(25, 31)) {
    for (double p : {1.5, 2.0, 4.0}) {
      for (double r : {1.0, 2.0, 3.0, kInf}) {
        CHECK(lorentz_norm(f, {p, r}) == doctest::Approx(oracle::lorentz_by_quadrature(f, p, r, false)).epsilon(1e-9));
        CHECK(lorentz_star_norm(f, {p, r}) ==
              doctest::Approx(oracle::lorentz_by_quadrature(f, p, r, true)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("rearrangement invariance") {
  const double m1[] = {0.5, 2.0}, v1[] = {3.0, 1.0};
  const double m2[] = {2.0, 0.5}, v2[] = {-1.0, 3.0};
  const auto f = RadialStepFunction::from_shell_measures(1, m1, v1);
  const auto g = RadialStepFunction::from_shell_measures(1, m2, v2);
  CHECK(rearrangement(f) == rearrangement(g));
  CHECK(lorentz_norm(f, {3.0, 1.5}) == lorentz_norm(g, {3.0, 1.5}));
}

TEST_CASE("equivalence sandwich") {
  const auto e1 = equivalence_check(indicator(1.0), {2.0, 1.0});
  CHECK(e1.pass);
  CHECK(e1.ratio == doctest::Approx(2.0).epsilon(1e-12));
  const auto e2 = equivalence_check(indicator(1.0), {2.0, 2.0});
  CHECK(e2.pass);
  CHECK(e2.ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  for (const auto& f : corpus(50, 2))
    for (double p : {1.5, 2.0, 4.0})
      for (double r : {1.0, 2.0, kInf}) CHECK(equivalence_check(f, {p, r}).pass);
  CHECK_THROWS_AS(equivalence_check(indicator(1.0), {1.0, 1.0}), DomainError);
}

TEST_CASE("Hoelder pairing") {
  const auto a0 = RadialStepFunction::shell_indicator(1, 0.5, 1.0);
  const auto r = lorentz_holder_pairing(a0, a0, {2.0, 2.0});
  CHECK(r.integral == 1.0);
  CHECK(r.bound == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.pass);
  CHECK(lorentz_holder_pairing(a0, RadialStepFunction::zero(), {2.0, 2.0}).integral == 0.0);
  const auto c = corpus(30, 17);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    const auto& f = c[rng() % c.size()];
    const auto& g = c[rng() % c.size()];
    const double p = 1.25 + static_cast<double>(rng() % 12) * 0.25;
    for (double rr : {1.0, 2.0, kInf}) CHECK(lorentz_holder_pairing(f, g, {p, rr}).pass);
  }
}

TEST_CASE("refinement chain") {
  const auto r = refinement_chain_check(indicator(1.0), 2.0, 1.0, 4.0);
  CHECK(r.pass);
  CHECK(r.norms[0] == doctest::Approx(2.0));
  CHECK(r.norms[1] == doctest::Approx(1.0));
  CHECK(r.norms[3] == doctest::Approx(1.0));
  for (double n : refinement_chain_check(RadialStepFunction::zero(), 2.0, 1.0, 4.0).norms) CHECK(n == 0.0);
  for (const auto& f : corpus(30, 6)) {
    const auto c = refinement_chain_check(f, 2.0, 1.0, 4.0);
    CHECK(c.all_finite);
    CHECK(c.pass);
    for (int i = 0; i < 3; ++i) CHECK(c.normalized[i] >= c.normalized[i + 1] * (1.0 - 1e-12));
  }
}
