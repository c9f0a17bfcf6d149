#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ffdist/charsum.hpp"
#include "oracles.hpp"

using namespace ffdist;

TEST_CASE("gauss sum examples") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  CHECK(std::abs(gauss_sum(f5, 0).value) < tolerance(5));

  FieldCtx f3 = FieldCtx::make(3, 1);
  std::complex<double> i_sqrt3{0.0, std::sqrt(3.0)};
  CHECK(std::abs(gauss_sum(f3, 1).value - i_sqrt3) < tolerance(3));

  CHECK(std::abs(gauss_sum(f5, 1).value - std::sqrt(5.0)) < tolerance(5));
}

TEST_CASE("explicit Gauss formula") {
  CHECK(std::abs(gauss_explicit(FieldCtx::from_q(9)) - std::complex<double>{3, 0}) < 1e-12);
  std::complex<double> i_sqrt7{0.0, std::sqrt(7.0)};
  CHECK(std::abs(gauss_explicit(FieldCtx::from_q(7)) - i_sqrt7) < 1e-12);
  CHECK(std::abs(gauss_explicit(FieldCtx::from_q(25)) - std::complex<double>{-5, 0}) < 1e-12);
}

TEST_CASE("closed form exhaustive to q = 169") {
  for (std::uint32_t q : oracles::odd_prime_powers_upto(169)) {
    FieldCtx f = FieldCtx::from_q(q);
    CharSumResult r = gauss_sum(f, 1);
    CHECK(std::abs(r.value - gauss_explicit(f)) < r.tol());
    CHECK(std::abs(std::abs(r.value) - std::sqrt(static_cast<double>(q))) < r.tol());
  }
}

TEST_CASE("multiplicativity G_a = psi(a) G_1") {
  for (std::uint32_t q : oracles::odd_prime_powers_upto(49)) {
    FieldCtx f = FieldCtx::from_q(q);
    std::complex<double> g1 = gauss_sum(f, 1).value;
    for (Elem a = 1; a < f.q(); ++a) {
      CharSumResult r = gauss_sum(f, a);
      CHECK(std::abs(r.value - static_cast<double>(f.psi(a)) * g1) < r.tol());
      CHECK(r.consistent());
    }
  }
}

TEST_CASE("square completion identity") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  CHECK(std::abs(square_char_sum(f5, 1).value - std::sqrt(5.0)) < tolerance(5));
  CHECK(std::abs(square_char_sum(f5, 2).value + std::sqrt(5.0)) < tolerance(5));

  FieldCtx f3 = FieldCtx::make(3, 1);
  std::complex<double> expect{0.0, -std::sqrt(3.0)};
  CHECK(std::abs(square_char_sum(f3, 2).value - expect) < tolerance(3));

  CHECK_THROWS_AS(square_char_sum(f5, 0), std::invalid_argument);
  CHECK(square_char_sum(f5, 1).consistent());
}

TEST_CASE("quadratic vector sum") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  CHECK(std::abs(quadratic_vector_sum(f5, 1, {0}).value - std::sqrt(5.0)) < tolerance(5));
  CHECK(std::abs(quadratic_vector_sum(f5, 1, {0, 0}).value - 5.0) < tolerance(25));

  // k=1, t=2, beta=(1): chi(1/(-8)) psi(2) sqrt(5) = chi(3)(-sqrt 5).
  std::complex<double> expect = f5.chi(3) * -std::sqrt(5.0);
  CharSumResult r = quadratic_vector_sum(f5, 2, {1});
  CHECK(std::abs(r.value - expect) < r.tol());
  CHECK(std::abs(*r.closed_form - expect) < 1e-12);

  CHECK_THROWS_AS(quadratic_vector_sum(f5, 0, {1}), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (std::uint32_t q : {3u, 5u, 7u, 9u}) {
    FieldCtx f = FieldCtx::from_q(q);
    std::uniform_int_distribution<Elem> pick(0, f.q() - 1);
    for (std::uint32_t k = 1; k <= 3; ++k) {
      for (Elem t = 1; t < f.q(); ++t) {
        for (int trial = 0; trial < 20; ++trial) {
          std::vector<Elem> beta(k);
          for (auto& b : beta) b = pick(rng);
          CHECK(quadratic_vector_sum(f, t, beta).consistent());
        }
      }
    }
  }
}

TEST_CASE("kloosterman") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  double expect = 2.0 + 2.0 * std::cos(4.0 * std::numbers::pi / 5.0);
  CHECK(std::abs(kloosterman(f5, 1, Twist::Trivial).value - expect) < tolerance(5));
  CHECK(std::abs(kloosterman(f5, 0, Twist::Quadratic).value - std::sqrt(5.0)) < tolerance(5));
  // a = 0, trivial twist: sum of chi(s) over s != 0 is -1.
  CHECK(std::abs(kloosterman(f5, 0, Twist::Trivial).value + 1.0) < tolerance(5));

  for (std::uint32_t q : oracles::odd_prime_powers_upto(49)) {
    FieldCtx f = FieldCtx::from_q(q);
    for (Elem a = 0; a < f.q(); ++a) {
      CHECK(kloosterman(f, a, Twist::Trivial).consistent());
      CHECK(kloosterman(f, a, Twist::Quadratic).consistent());
    }
  }
}

TEST_CASE("polynomial character sums") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  // g(u) = u^2 - 4u = u^2 + u over F_5.
  CharSumResult r = poly_char_sum(f5, {0, 1, 1}, 1);
  CHECK(std::abs(r.value - std::complex<double>{-1, 0}) < r.tol());
  CHECK(r.consistent());

  FieldCtx f7 = FieldCtx::make(7, 1);
  CHECK(std::abs(poly_char_sum(f7, {0, 1}, 1).value) < tolerance(7));

  CHECK_THROWS_AS(poly_char_sum(f5, {3}, 1), std::invalid_argument);         // constant
  CHECK_THROWS_AS(poly_char_sum(f5, {0, 2}, 1), std::invalid_argument);      // not monic
  CHECK_THROWS_AS(poly_char_sum(f5, {0, 0, 1}, 1), std::invalid_argument);   // u^2
  CHECK_THROWS_AS(poly_char_sum(f5, {1, 2, 1}, 1), std::invalid_argument);   // (u+1)^2
  CHECK_THROWS_AS(poly_char_sum(f5, {1, 0, 2, 0, 1}, 1), std::invalid_argument);  // (u^2+1)^2
}

TEST_CASE("square polynomial detection") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  CHECK(is_square_poly(f5, {4, 4, 1}));           // (u+2)^2
  CHECK(!is_square_poly(f5, {0, 1, 1}));
  CHECK(!is_square_poly(f5, {0, 1}));             // odd degree
  CHECK(is_square_poly(f5, {4, 0, 4, 0, 1}));     // (u^2+2)^2
  CHECK(!is_square_poly(f5, {1, 1, 0, 0, 1}));
}

TEST_CASE("Weil-type bound on random admissible polynomials") {
  std::mt19937_64 rng(13);
  for (std::uint32_t q : oracles::odd_prime_powers_upto(49)) {
    FieldCtx f = FieldCtx::from_q(q);
    std::uniform_int_distribution<Elem> pick(0, f.q() - 1);
    std::uniform_int_distribution<std::uint32_t> degpick(2, 4);
    int done = 0;
    while (done < 50) {
      std::uint32_t deg = degpick(rng);
      std::vector<Elem> g(deg + 1);
      for (std::uint32_t i = 0; i < deg; ++i) g[i] = pick(rng);
      g[deg] = 1;
      if (is_square_poly(f, g)) continue;
      for (Elem s = 1; s < std::min<Elem>(f.q(), 4); ++s) {
        CharSumResult r = poly_char_sum(f, g, s);
        CHECK(std::abs(r.value) <= *r.bound + r.tol());
      }
      ++done;
    }
  }
}
