#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ffdist/config.hpp"
#include "oracles.hpp"

using namespace ffdist;

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(ConfigSpec(2, {{1, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(ConfigSpec(2, {{1, 3, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(ConfigSpec(2, {{1, 2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(ConfigSpec(2, {{1, 2, 1}, {2, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(ConfigSpec(3, {{1, 2, 1}, {1, 3, 1}, {2, 3, 1}, {1, 2, 2}}),
                  std::invalid_argument);
  ConfigSpec normalized(2, {{2, 1, 3}});
  CHECK(normalized.edges[0].i == 1);
  CHECK(normalized.edges[0].j == 2);
}

TEST_CASE("count examples") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  VectorSpace sp(f5, 2);
  PointSet full = PointSet::full(sp.size());

  // k=2 reduction to the pair count.
  CHECK(count_configs(sp, full, ConfigSpec(2, {{1, 2, 1}})) == pair_count(sp, 1));

  // k=1: just |E|.
  CHECK(count_configs(sp, full, ConfigSpec(1, {})) == 25);

  // Chain of two unit distances: sum over middles of degree^2 = 25 * 16.
  CHECK(count_configs(sp, full, ConfigSpec(3, {{1, 2, 1}, {2, 3, 1}})) == 400);
}

TEST_CASE("backtracking equals the naive tuple filter") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u01(0, 1);
  for (auto [q, d] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {5, 2}, {7, 2},
                                                                          {3, 3}, {5, 3}}) {
    FieldCtx f = FieldCtx::from_q(q);
    VectorSpace sp(f, d);
    std::uniform_int_distribution<Elem> color(1, f.q() - 1);
    for (int trial = 0; trial < 6; ++trial) {
      PointSet e(sp.size());
      for (std::uint64_t r = 0; r < sp.size(); ++r)
        if (u01(rng) < 0.4) e.insert(r);
      if (e.size() < 3) continue;
      std::vector<ConfigSpec> specs;
      specs.emplace_back(2, std::vector<EdgeConstraint>{{1, 2, color(rng)}});
      specs.emplace_back(3, std::vector<EdgeConstraint>{{1, 2, color(rng)}, {2, 3, color(rng)}});
      specs.emplace_back(3, std::vector<EdgeConstraint>{
                                {1, 2, color(rng)}, {1, 3, color(rng)}, {2, 3, color(rng)}});
      for (const auto& spec : specs) {
        double tuples = std::pow(static_cast<double>(e.size()), spec.k);
        if (tuples > 1e6) continue;
        CHECK(count_configs(sp, e, spec) == oracles::count_configs_naive(sp, e, spec));
        CHECK(count_configs(sp, e, spec, true) == oracles::count_configs_naive(sp, e, spec, true));
      }
    }
  }
}

TEST_CASE("translation and dilation invariance") {
  std::mt19937_64 rng(53);
  FieldCtx f7 = FieldCtx::make(7, 1);
  VectorSpace sp(f7, 2);
  std::uniform_real_distribution<double> u01(0, 1);
  PointSet e(sp.size());
  for (std::uint64_t r = 0; r < sp.size(); ++r)
    if (u01(rng) < 0.5) e.insert(r);
  ConfigSpec spec(3, {{1, 2, 1}, {2, 3, 2}});
  std::uint64_t base = count_configs(sp, e, spec);

  std::uniform_int_distribution<std::uint64_t> pick(0, sp.size() - 1);
  for (int i = 0; i < 5; ++i) CHECK(count_configs(sp, e.translated(sp, pick(rng)), spec) == base);

  for (Elem lam = 2; lam < 7; ++lam) {
    PointSet scaled(sp.size());
    for (std::uint64_t r : e.to_list()) {
      auto c = sp.coords(r);
      for (auto& x : c) x = f7.mul(lam, x);
      scaled.insert(sp.rank(c));
    }
    Elem lam2 = f7.mul(lam, lam);
    ConfigSpec dilated(3, {{1, 2, f7.mul(lam2, 1)}, {2, 3, f7.mul(lam2, 2)}});
    CHECK(count_configs(sp, scaled, dilated) == base);
  }
}

TEST_CASE("adding a constraint never increases the count") {
  std::mt19937_64 rng(59);
  FieldCtx f5 = FieldCtx::make(5, 1);
  VectorSpace sp(f5, 2);
  std::uniform_real_distribution<double> u01(0, 1);
  PointSet e(sp.size());
  for (std::uint64_t r = 0; r < sp.size(); ++r)
    if (u01(rng) < 0.6) e.insert(r);
  std::uint64_t chain = count_configs(sp, e, ConfigSpec(3, {{1, 2, 1}, {2, 3, 1}}));
  std::uint64_t triangle = count_configs(sp, e, ConfigSpec(3, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}}));
  CHECK(triangle <= chain);
}

TEST_CASE("guard") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  VectorSpace sp(f5, 2);
  PointSet full = PointSet::full(sp.size());
  CHECK_THROWS_AS(count_configs(sp, full, ConfigSpec(3, {{1, 2, 1}, {2, 3, 1}}), false, 10),
                  GuardError);
}

TEST_CASE("prediction and threshold") {
  ConfigSpec pairspec(2, {{1, 2, 1}});
  CHECK(predicted_count(pairspec, 625, 25) == doctest::Approx(15625.0));
  CHECK(predicted_count(ConfigSpec(1, {}), 77, 25) == doctest::Approx(77.0));

  FieldCtx f5 = FieldCtx::make(5, 1);
  VectorSpace sp(f5, 2);
  PointSet full = PointSet::full(sp.size());
  double predicted = predicted_count(pairspec, full.size(), 5);
  CHECK(predicted == doctest::Approx(125.0));
  CHECK(static_cast<double>(count_configs(sp, full, pairspec)) / predicted ==
        doctest::Approx(0.8));

  CHECK(threshold_size(2, 9, 2, 1) == doctest::Approx(27.0));
  CHECK(threshold_size(3, 7, 3, 2) == doctest::Approx(std::pow(7.0, 8.0 / 3.0)));
  CHECK_THROWS_AS(threshold_size(2, 7, 3, 3), std::invalid_argument);  // n > d
}

TEST_CASE("pseudo-arithmetic progressions") {
  FieldCtx f17 = FieldCtx::make(17, 1);
  VectorSpace sp(f17, 3);

  // The rotated non-coordinate-arithmetic triple.
  std::vector<std::uint64_t> triple = {sp.rank({0, 0, 0}), sp.rank({0, 6, 4}),
                                       sp.rank({6, 6, 0})};
  PointSet e(sp.size());
  for (std::uint64_t r : triple) e.insert(r);
  e.insert(sp.rank({1, 1, 1}));  // noise
  auto found = find_pseudo_ap(sp, e, 3, 0);
  CHECK(std::find(found.begin(), found.end(), triple) != found.end());

  // Every returned tuple re-verifies independently.
  for (const auto& tup : found)
    for (std::size_t i = 0; i < tup.size(); ++i)
      for (std::size_t j = i + 1; j < tup.size(); ++j) {
        std::int64_t gap = static_cast<std::int64_t>(j - i);
        CHECK(sp.norm(sp.sub(tup[j], tup[i])) == f17.from_int(gap * gap));
      }

  // Degenerate construction (j, z) with ||z|| = 0.
  for (std::uint32_t k = 2; k <= 4; ++k) {
    auto z = null_vector(f17, 2);
    REQUIRE(z.has_value());
    auto zc = VectorSpace(f17, 2).coords(*z);
    PointSet ez(sp.size());
    std::vector<std::uint64_t> expect;
    for (std::uint32_t j = 1; j <= k; ++j) {
      std::uint64_t r = sp.rank({f17.from_int(j), zc[0], zc[1]});
      ez.insert(r);
      expect.push_back(r);
    }
    auto hits = find_pseudo_ap(sp, ez, k, 0);
    CHECK(std::find(hits.begin(), hits.end(), expect) != hits.end());
  }

  // Single point cannot carry a progression.
  PointSet lone(sp.size());
  lone.insert(5);
  CHECK(find_pseudo_ap(sp, lone, 2, 0).empty());

  // p <= k-1 leaves the color set.
  FieldCtx f3 = FieldCtx::make(3, 1);
  CHECK_THROWS_AS(pseudo_ap_spec(f3, 2, 4), std::invalid_argument);
}

TEST_CASE("null vectors") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  auto z5 = null_vector(f5, 2);
  REQUIRE(z5.has_value());
  CHECK(VectorSpace(f5, 2).norm(*z5) == 0);
  CHECK(*z5 != 0);

  FieldCtx f7 = FieldCtx::make(7, 1);
  CHECK(!null_vector(f7, 2).has_value());
  auto z7 = null_vector(f7, 3);
  REQUIRE(z7.has_value());
  CHECK(VectorSpace(f7, 3).norm(*z7) == 0);
}

TEST_CASE("pseudo-randomness report") {
  FieldCtx f5 = FieldCtx::make(5, 1);

  PseudoRandomReport r3 = pseudo_random_report(VectorSpace(f5, 3));
  CHECK(r3.uniformity_ratio == doctest::Approx(1.5));  // odd d: 30 vs 20 per color

  PseudoRandomReport r2 = pseudo_random_report(VectorSpace(f5, 2));
  CHECK(r2.uniformity_ratio == doctest::Approx(1.0));
  CHECK(r2.non_edge_fraction == doctest::Approx(1.0 / 3.0));
  CHECK(r2.vertex_count == 25);
  CHECK(r2.edge_counts.size() == 4);
  CHECK(r2.edge_counts[0] == 25 * 4 / 2);
}

TEST_CASE("count trend at threshold-scaled densities") {
  // Seeded Bernoulli E at 4x the threshold size (clamped to the space);
  // ratio observed/predicted must sit in [0.5, 2.0] in >= 18/20 trials.
  struct Cell {
    std::uint32_t d, q, k, n;
  };
  for (Cell cell : {Cell{2, 11, 3, 2}, Cell{2, 13, 3, 2}, Cell{3, 7, 3, 3}}) {
    FieldCtx f = FieldCtx::from_q(cell.q);
    VectorSpace sp(f, cell.d);
    double target = 4.0 * threshold_size(cell.d, cell.q, cell.k, cell.n);
    double density = std::min(1.0, target / static_cast<double>(sp.size()));
    std::vector<EdgeConstraint> edges;
    if (cell.n == 2)
      edges = {{1, 2, 1}, {2, 3, 1}};
    else
      edges = {{1, 2, 1}, {1, 3, 1}, {2, 3, 1}};
    ConfigSpec spec(cell.k, edges);

    int ok = 0;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      std::mt19937_64 rng(1000 * cell.q + trial);
      std::uniform_real_distribution<double> u01(0, 1);
      PointSet e(sp.size());
      for (std::uint64_t r = 0; r < sp.size(); ++r)
        if (u01(rng) < density) e.insert(r);
      double observed = static_cast<double>(count_configs(sp, e, spec));
      double predicted = predicted_count(spec, e.size(), cell.q);
      double ratio = observed / predicted;
      if (ratio >= 0.5 && ratio <= 2.0) ++ok;
    }
    CHECK(ok >= 18);
  }
}
