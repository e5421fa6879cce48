#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "cohesion/verify.hpp"
#include "helpers.hpp"

using namespace cohesion;
using test_helpers::max_abs_diff;
using test_helpers::random_coords_space;
using test_helpers::random_dense_space;
using test_helpers::random_point_like;

namespace {

DissimilaritySpace weighted_three_point() {
  Mat d(3, 3, 0.0);
  d(0, 1) = d(1, 0) = 1.0;
  d(0, 2) = d(2, 0) = 2.0;
  d(1, 2) = d(2, 1) = 3.0;
  return DissimilaritySpace::from_matrix({}, std::move(d), {0.2, 0.3, 0.5});
}

}  // namespace

TEST_CASE("local mass identities") {
  SUBCASE("diagonal is two thirds of the point mass") {
    const auto T = induced_triplet(random_coords_space(6, 31, true));
    for (std::size_t x = 0; x < 6; ++x)
      CHECK(local_mass(T, x, x) == doctest::Approx(2.0 * T.masses()[x] / 3.0).epsilon(1e-15));
  }
  SUBCASE("a two-point space always has unit pair mass") {
    Mat d(2, 2, 0.0);
    d(0, 1) = d(1, 0) = 4.2;
    for (double q : {0.1, 0.5, 0.9}) {
      const auto T = induced_triplet(DissimilaritySpace::from_matrix({}, d, {q, 1.0 - q}));
      CHECK(local_mass(T, 0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  SUBCASE("weighted three-point example") {
    const auto T = induced_triplet(weighted_three_point());
    CHECK(local_mass(T, 0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(local_mass(T, 0, 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(local_mass(T, 1, 0) == local_mass(T, 0, 1));
  }
}

TEST_CASE("weighted three-point cohesion matrix") {
  const auto C = cohesion_matrix(induced_triplet(weighted_three_point()));
  const double expected[3][3] = {{1.6, 0.5, 0.0}, {0.5, 1.4, 0.0}, {0.0, 0.0, 1.0}};
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t w = 0; w < 3; ++w)
      CHECK(C.values(x, w) == doctest::Approx(expected[x][w]).epsilon(1e-13));
}

TEST_CASE("a single point has self-cohesion one half") {
  Mat d(1, 1, 0.0);
  const auto C = cohesion_matrix(induced_triplet(DissimilaritySpace::from_matrix({}, d, {1.0})));
  CHECK(C.values(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("geometric chain attains the harmonic maximum") {
  const auto space = generate(GeneratorSpec{GeometricChain{5, 0.1}});
  const auto C = cohesion_matrix(induced_triplet(space));
  CHECK(C.values(4, 3) == doctest::Approx(47.0 / 60.0).epsilon(1e-13));
  CHECK(C.values(4, 4) == doctest::Approx(107.0 / 60.0).epsilon(1e-13));
}

TEST_CASE("weighted responses split cohesion proportionally") {
  for (double alpha : {0.0, 0.3, 0.7, 1.0}) {
    // alpha of the responses say the first two are most alike, the rest blame
    // the first point
    std::vector<OutlierResponse> responses{{0, 1, 2, alpha}, {1, 2, 0, 1.0 - alpha}};
    const auto T = aggregate_outlier_responses(default_labels(3), {}, responses);
    const auto C = cohesion_matrix(T);
    CHECK(C.values(0, 1) == doctest::Approx(alpha / 3.0).epsilon(1e-14));
    CHECK(C.values(2, 1) == doctest::Approx((1.0 - alpha) / 3.0).epsilon(1e-14));
  }
}

TEST_CASE("classic unweighted cohesion") {
  SUBCASE("two points give zero cross cohesion and half self cohesion") {
    Mat d(2, 2, 0.0);
    d(0, 1) = d(1, 0) = 1.0;
    const Mat L = legacy_cohesion(DissimilaritySpace::from_matrix({}, d));
    CHECK(L(0, 1) == 0.0);
    CHECK(L(1, 0) == 0.0);
    CHECK(L(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("requires uniform masses") {
    CHECK_THROWS_WITH_AS(legacy_cohesion(weighted_three_point()),
                         doctest::Contains("uniform"), std::invalid_argument);
  }
  SUBCASE("requires tie-free rows") {
    Mat d(3, 3, 0.0);
    d(0, 1) = d(1, 0) = 1.0;
    d(0, 2) = d(2, 0) = 1.0;
    d(1, 2) = d(2, 1) = 2.0;
    CHECK_THROWS_AS(legacy_cohesion(DissimilaritySpace::from_matrix({}, d)),
                    std::invalid_argument);
  }
  SUBCASE("affine bridge to the weighted definition") {
    // C(x,w) = (n-1) L(x,w) + 1(x = w) / 2, exactly, on tie-free uniform spaces
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
      const auto space = random_coords_space(8, seed);
      const auto C = cohesion_matrix(induced_triplet(space));
      const Mat L = legacy_cohesion(space);
      for (std::size_t x = 0; x < 8; ++x)
        for (std::size_t w = 0; w < 8; ++w) {
          const double expected = 7.0 * L(x, w) + (x == w ? 0.5 : 0.0);
          CHECK(std::abs(C.values(x, w) - expected) <= 1e-12);
        }
    }
  }
}

TEST_CASE("local depth") {
  SUBCASE("single point") {
    Mat d(1, 1, 0.0);
    const auto T = induced_triplet(DissimilaritySpace::from_matrix({}, d, {1.0}));
    const auto depth = local_depth(cohesion_matrix(T), T.masses());
    CHECK(depth.generalized[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(depth.legacy.empty());
  }
  SUBCASE("weighted three-point example") {
    const auto T = induced_triplet(weighted_three_point());
    const auto depth = local_depth(cohesion_matrix(T), T.masses());
    CHECK(depth.generalized[0] == doctest::Approx(0.47).epsilon(1e-13));
  }
  SUBCASE("mass-weighted mean depth is one half") {
    for (std::uint64_t seed = 40; seed < 45; ++seed) {
      const auto T = induced_triplet(random_coords_space(20, seed, true));
      const auto depth = local_depth(cohesion_matrix(T), T.masses());
      double mean = 0.0;
      for (std::size_t x = 0; x < 20; ++x) mean += depth.generalized[x] * T.masses()[x];
      CHECK(mean == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
  SUBCASE("legacy depth is the row sum of the classic matrix") {
    const auto space = random_coords_space(6, 46);
    const auto T = induced_triplet(space);
    const Mat L = legacy_cohesion(space);
    const auto depth = local_depth(cohesion_matrix(T), T.masses(), L);
    REQUIRE(depth.legacy.size() == 6);
    double expected = 0.0;
    for (std::size_t w = 0; w < 6; ++w) expected += L(2, w);
    CHECK(depth.legacy[2] == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("community graph") {
  SUBCASE("weighted three-point example thresholds to singletons") {
    const auto T = induced_triplet(weighted_three_point());
    const auto g = community_graph(cohesion_matrix(T), T.masses());
    CHECK(g.threshold == doctest::Approx(0.62).epsilon(1e-13));
    for (const auto& e : g.edges) CHECK_FALSE(e.strong);
    CHECK(g.communities.size() == 3);
  }
  SUBCASE("zero threshold joins everything with positive symmetrized cohesion") {
    // the neutral space (no responses) has strictly positive cohesion between
    // every pair of points
    const auto T = aggregate_outlier_responses(default_labels(5), {}, {});
    const auto g = community_graph(cohesion_matrix(T), T.masses(), 0.0);
    CHECK(g.communities.size() == 1);
    CHECK(g.communities[0].size() == 5);
  }
  SUBCASE("well-separated blocks never merge") {
    SeparatedBlocks kind{{4, 5}, {}, 30.0};
    const auto space = generate(GeneratorSpec{kind, 7});
    const auto T = induced_triplet(space);
    const auto g = community_graph(cohesion_matrix(T), T.masses());
    for (const auto& e : g.edges) {
      const bool same_block = (e.a < 4) == (e.b < 4);
      if (!same_block) CHECK(e.weight == 0.0);  // cross cohesion is exactly zero
    }
    for (const auto& community : g.communities) {
      const bool first = community.front() < 4;
      for (std::size_t member : community) CHECK((member < 4) == first);
    }
  }
}

TEST_CASE("self-cohesion strictly dominates") {
  for (std::uint64_t seed = 50; seed < 54; ++seed) {
    const auto T = induced_triplet(random_coords_space(15, seed, true));
    const auto C = cohesion_matrix(T);
    for (std::size_t x = 0; x < 15; ++x)
      for (std::size_t w = 0; w < 15; ++w)
        if (w != x && T.masses()[w] > 0.0) CHECK(C.values(x, x) > C.values(x, w));
  }
}

TEST_CASE("members of a point-like set support each other above outsiders") {
  const auto config = random_point_like(99);
  const auto T = induced_triplet(config.space);
  const auto C = cohesion_matrix(T);
  const auto& block = config.partition.blocks[0];
  std::vector<char> inside(T.size(), 0);
  for (std::size_t m : block) inside[m] = 1;
  for (std::size_t x : block)
    for (std::size_t xp : block)
      for (std::size_t w = 0; w < T.size(); ++w)
        if (!inside[w]) CHECK(C.values(x, xp) > C.values(x, w));
}

TEST_CASE("pair local mass is at least the pair's own mass") {
  const auto T = random_dense_space(10, 60, true);
  for (std::size_t x = 0; x < 10; ++x)
    for (std::size_t y = x + 1; y < 10; ++y)
      CHECK(local_mass(T, x, y) >= T.masses()[x] + T.masses()[y] - 1e-15);
}

TEST_CASE("weighted mean cohesion is one half") {
  for (std::uint64_t seed = 70; seed < 76; ++seed) {
    const auto T = induced_triplet(random_coords_space(30, seed, true));
    CHECK(std::abs(weighted_mean_cohesion(cohesion_matrix(T), T.masses()) - 0.5) <= 1e-10);
  }
  const auto dense = random_dense_space(12, 77, true);
  CHECK(std::abs(weighted_mean_cohesion(cohesion_matrix(dense), dense.masses()) - 0.5) <= 1e-10);
}

TEST_CASE("kernel agrees with the literal definition") {
  for (std::size_t n : {1, 2, 3, 9, 24}) {
    const auto T = induced_triplet(random_coords_space(n, 80 + n, true));
    CHECK(max_abs_diff(cohesion_matrix(T).values, brute_force_cohesion(T).values) <= 1e-12);
  }
  const auto dense = random_dense_space(14, 90, true);
  CHECK(max_abs_diff(cohesion_matrix(dense).values, brute_force_cohesion(dense).values) <=
        1e-12);
}

TEST_CASE("row parallelism does not change the result") {
  const auto T = induced_triplet(random_coords_space(120, 95, true));
  const auto serial = cohesion_matrix(T, 1);
  const auto parallel = cohesion_matrix(T, 4);
  CHECK(max_abs_diff(serial.values, parallel.values) == 0.0);
}

TEST_CASE("a comparison function with broken degenerate entries is rejected") {
  const std::size_t n = 3;
  // all-zero tensor: local masses vanish although opposing masses are positive
  std::vector<double> tensor(n * (n + 1) / 2 * n, 0.0);
  const auto broken =
      TripletComparisonSpace::from_dense(default_labels(n), uniform_masses(n), tensor);
  CHECK_THROWS_AS(cohesion_matrix(broken), std::logic_error);
}

TEST_CASE("zero-mass points are inert") {
  Mat d(3, 3, 0.0);
  d(0, 1) = d(1, 0) = 1.0;
  d(0, 2) = d(2, 0) = 2.0;
  d(1, 2) = d(2, 1) = 3.0;
  const auto with_ghost =
      cohesion_matrix(induced_triplet(DissimilaritySpace::from_matrix({}, d, {0.5, 0.5, 0.0})));
  Mat d2(2, 2, 0.0);
  d2(0, 1) = d2(1, 0) = 1.0;
  const auto without =
      cohesion_matrix(induced_triplet(DissimilaritySpace::from_matrix({}, d2, {0.5, 0.5})));
  // the zero-mass third point contributes nothing to the surviving pair
  CHECK(with_ghost.values(0, 0) == doctest::Approx(without.values(0, 0)).epsilon(1e-15));
  CHECK(with_ghost.values(0, 1) == doctest::Approx(without.values(0, 1)).epsilon(1e-15));
  CHECK(std::abs(weighted_mean_cohesion(with_ghost, {0.5, 0.5, 0.0}) - 0.5) <= 1e-12);
}
