#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ffdist/geometry.hpp"
#include "oracles.hpp"

using namespace ffdist;

TEST_CASE("rank and coordinate round trips") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  VectorSpace sp(f5, 3);
  CHECK(sp.size() == 125);
  for (std::uint64_t r = 0; r < sp.size(); ++r) CHECK(sp.rank(sp.coords(r)) == r);
  CHECK(sp.rank({1, 2, 0}) == 1 + 2 * 5);
  CHECK_THROWS_AS(sp.rank({1, 2}), std::invalid_argument);
}

TEST_CASE("norm") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  VectorSpace sp2(f5, 2);
  CHECK(sp2.norm(sp2.rank({1, 2})) == 0);

  FieldCtx f17 = FieldCtx::make(17, 1);
  VectorSpace sp3(f17, 3);
  CHECK(sp3.norm(sp3.rank({0, 6, 4})) == 1);
  CHECK(sp3.norm(0) == 0);

  // norm(-x) = norm(x), norm(lx) = l^2 norm(x).
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> pick(0, sp3.size() - 1);
  for (int i = 0; i < 100; ++i) {
    std::uint64_t x = pick(rng);
    CHECK(sp3.norm(sp3.neg(x)) == sp3.norm(x));
    for (Elem lam = 1; lam < 17; ++lam) {
      std::uint64_t lx = 0, scale = 1;
      std::uint64_t r = x;
      for (std::uint32_t j = 0; j < 3; ++j) {
        lx += static_cast<std::uint64_t>(f17.mul(lam, static_cast<Elem>(r % 17))) * scale;
        r /= 17;
        scale *= 17;
      }
      CHECK(sp3.norm(lx) == f17.mul(f17.mul(lam, lam), sp3.norm(x)));
    }
  }
}

TEST_CASE("sphere examples") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  VectorSpace sp(f5, 2);
  PointSet s1 = sphere(sp, 1);
  CHECK(s1.size() == 4);
  CHECK(s1.contains(sp.rank({1, 0})));
  CHECK(s1.contains(sp.rank({4, 0})));
  CHECK(s1.contains(sp.rank({0, 1})));
  CHECK(s1.contains(sp.rank({0, 4})));

  FieldCtx f3 = FieldCtx::make(3, 1);
  CHECK(sphere(VectorSpace(f3, 3), 1).size() == 6);
  CHECK(sphere(sp, 0).size() == 9);
}

TEST_CASE("sphere size formula vs enumeration") {
  for (std::uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u}) {
    FieldCtx f = FieldCtx::from_q(q);
    for (std::uint32_t d : {2u, 3u, 4u}) {
      VectorSpace sp(f, d);
      std::uint64_t total = 0;
      for (Elem t = 0; t < f.q(); ++t) {
        std::uint64_t enumerated = sphere(sp, t).size();
        CHECK(enumerated == sphere_size_formula(sp, t));
        CHECK(enumerated == sphere_size_convolution(sp, t));
        total += enumerated;
      }
      CHECK(total == sp.size());  // spheres partition the space
    }
  }
}

TEST_CASE("formula examples") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  CHECK(sphere_size_formula(VectorSpace(f5, 2), 1) == 4);
  CHECK(sphere_size_formula(VectorSpace(f5, 3), 0) == 25);
  FieldCtx f3 = FieldCtx::make(3, 1);
  CHECK(sphere_size_formula(VectorSpace(f3, 3), 1) == 6);
}

TEST_CASE("pair count") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  VectorSpace sp(f5, 2);
  CHECK(pair_count(sp, 1) == 100);

  FieldCtx f3 = FieldCtx::make(3, 1);
  CHECK(pair_count(VectorSpace(f3, 2), 0) == 9);

  // Brute force where q^{2d} is small.
  for (std::uint32_t q : {3u, 5u, 7u}) {
    FieldCtx f = FieldCtx::from_q(q);
    for (std::uint32_t d : {2u, 3u}) {
      VectorSpace s(f, d);
      if (s.size() * s.size() > 10000000ull) continue;
      for (Elem t = 0; t < f.q(); ++t) CHECK(pair_count(s, t) == oracles::pair_count_naive(s, t));
    }
  }
}

TEST_CASE("pair count regimes") {
  // d=2, t=0, q = 1 mod 4: ratio to q^{2d-1} near 2; elsewhere near 1.
  for (std::uint32_t q : {5u, 13u, 17u}) {
    FieldCtx f = FieldCtx::from_q(q);
    VectorSpace sp(f, 2);
    double ratio = static_cast<double>(pair_count(sp, 0)) / std::pow(q, 3);
    CHECK(ratio >= 1.5);
    CHECK(ratio <= 2.5);
  }
  for (std::uint32_t q : {5u, 7u, 9u, 11u, 13u}) {
    FieldCtx f = FieldCtx::from_q(q);
    for (std::uint32_t d : {2u, 3u, 4u}) {
      VectorSpace sp(f, d);
      for (Elem t = 0; t < f.q(); ++t) {
        if (d == 2 && t == 0) continue;
        double ratio =
            static_cast<double>(pair_count(sp, t)) / std::pow(q, 2.0 * d - 1.0);
        CHECK(ratio >= 0.5);
        CHECK(ratio <= 1.5);
      }
    }
  }
}

TEST_CASE("sphere intersection examples") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  VectorSpace sp(f5, 2);
  CHECK(sphere_intersection(sp, 1, sp.rank({1, 2})) == 0);  // ||x|| = 0: disjoint
  CHECK(sphere_intersection(sp, 1, sp.rank({2, 0})) == 1);
  CHECK(sphere_intersection(sp, 1, sp.rank({1, 0})) == 0);
  CHECK_THROWS_AS(sphere_intersection(sp, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sphere_intersection(sp, 1, 0), std::invalid_argument);
}

TEST_CASE("intersection formula equals bitset count") {
  std::mt19937_64 rng(17);
  for (std::uint32_t q : {3u, 5u, 7u, 9u}) {
    FieldCtx f = FieldCtx::from_q(q);
    for (std::uint32_t d : {2u, 3u, 4u}) {
      VectorSpace sp(f, d);
      std::uniform_int_distribution<std::uint64_t> pick(1, sp.size() - 1);
      for (Elem t = 1; t < f.q(); ++t) {
        for (int trial = 0; trial < 50; ++trial) {
          std::uint64_t x = pick(rng);
          double formula = sphere_intersection_formula(sp, t, x);
          std::uint64_t exact = sphere_intersection(sp, t, x);
          CHECK(std::llround(formula) == static_cast<std::int64_t>(exact));
          CHECK(std::abs(formula - static_cast<double>(exact)) < 1e-6);
        }
      }
    }
  }
}

TEST_CASE("formula spot values") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  VectorSpace sp(f5, 2);
  // ||x|| = 0 gives exactly 0 for q = 1 mod 4.
  CHECK(std::abs(sphere_intersection_formula(sp, 1, sp.rank({1, 2}))) < 1e-9);
  CHECK(std::abs(sphere_intersection_formula(sp, 1, sp.rank({2, 0})) - 1.0) < 1e-9);
}

TEST_CASE("three sphere chains") {
  FieldCtx f7 = FieldCtx::make(7, 1);
  VectorSpace sp3(f7, 3);
  double lower = 6.0 * (7 - 2 - 1.0 / 6.0);  // (q-1)(q-2-(q-1)^{-1})
  CHECK(static_cast<double>(three_sphere_chain_count(sp3, 1, 1, 2)) >= lower);

  VectorSpace sp2(f7, 2);
  CHECK(three_sphere_chain_count(sp2, 1, 1, 2) > 0);

  // q = 5, d = 2 is outside the sharp-diameter claim; recorded only.
  FieldCtx f5 = FieldCtx::make(5, 1);
  VectorSpace sp5(f5, 2);
  (void)three_sphere_chain_count(sp5, 1, 1, 2);

  CHECK_THROWS_AS(three_sphere_chain_count(sp2, 0, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(three_sphere_chain_count(sp2, 1, 2, 2), std::invalid_argument);
}

TEST_CASE("point set basics") {
  PointSet s(100);
  CHECK(s.empty());
  s.insert(3);
  s.insert(3);
  s.insert(64);
  CHECK(s.size() == 2);
  CHECK(s.contains(64));
  s.erase(3);
  CHECK(s.size() == 1);
  CHECK(s.to_list() == std::vector<std::uint64_t>{64});
}
