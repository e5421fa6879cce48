#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <stdexcept>

#include "cohesion/verify.hpp"
#include "helpers.hpp"

using namespace cohesion;
using test_helpers::max_abs_diff;
using test_helpers::max_entry_diff;
using test_helpers::random_coords_space;
using test_helpers::random_dense_space;
using test_helpers::random_point_like;

namespace {

DissimilaritySpace three_point() {
  Mat d(3, 3, 0.0);
  d(0, 1) = d(1, 0) = 1.0;
  d(0, 2) = d(2, 0) = 2.0;
  d(1, 2) = d(2, 1) = 3.0;
  return DissimilaritySpace::from_matrix({}, std::move(d));
}

bool family_contains(const PointLikeFamily& family, const std::vector<std::size_t>& set) {
  return std::find(family.sets.begin(), family.sets.end(), set) != family.sets.end();
}

// Two tight pairs forming two superclusters, far apart: point-like structure
// at three scales.
DissimilaritySpace multi_scale_space() {
  const double centers[2][2] = {{0.0, 0.0}, {3000.0, 1700.0}};
  const double sub_offsets[2][2] = {{0.0, 0.0}, {50.0, 11.0}};
  Mat coords(8, 2, 0.0);
  std::size_t row = 0;
  for (const auto& center : centers)
    for (const auto& offset : sub_offsets)
      for (double x : {0.0, 2.0}) {
        coords(row, 0) = center[0] + offset[0] + x;
        coords(row, 1) = center[1] + offset[1];
        ++row;
      }
  return DissimilaritySpace::from_coords({}, std::move(coords));
}

}  // namespace

TEST_CASE("singletons and the full set are always point-like") {
  const auto T = induced_triplet(random_coords_space(7, 5));
  std::vector<std::size_t> all(7);
  for (std::size_t i = 0; i < 7; ++i) {
    all[i] = i;
    CHECK(is_point_like(T, {i}));
  }
  CHECK(is_point_like(T, all));
  CHECK_THROWS_AS(is_point_like(T, {}), std::invalid_argument);
  CHECK_THROWS_AS(is_point_like(T, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(is_point_like(T, {99}), std::invalid_argument);
}

TEST_CASE("only the closest pair of a three-point space is point-like") {
  const auto T = induced_triplet(three_point());
  CHECK(is_point_like(T, {0, 1}));
  CHECK_FALSE(is_point_like(T, {0, 2}));
  CHECK_FALSE(is_point_like(T, {1, 2}));
}

TEST_CASE("overlapping sets cannot both be point-like unless nested") {
  // all orderings of the three pair distances of a triangle
  const double values[3] = {1.0, 2.0, 3.0};
  int perm[3] = {0, 1, 2};
  do {
    Mat d(3, 3, 0.0);
    d(0, 1) = d(1, 0) = values[perm[0]];
    d(0, 2) = d(2, 0) = values[perm[1]];
    d(1, 2) = d(2, 1) = values[perm[2]];
    const auto T = induced_triplet(DissimilaritySpace::from_matrix({}, d));
    CHECK_FALSE((is_point_like(T, {0, 1}) && is_point_like(T, {1, 2})));
    CHECK_FALSE((is_point_like(T, {0, 1}) && is_point_like(T, {0, 2})));
    CHECK_FALSE((is_point_like(T, {0, 2}) && is_point_like(T, {1, 2})));
  } while (std::next_permutation(perm, perm + 3));
}

TEST_CASE("enumeration of a three-point space") {
  const auto family = enumerate_point_like(three_point());
  REQUIRE(family.sets.size() == 5);
  CHECK(family_contains(family, {0}));
  CHECK(family_contains(family, {1}));
  CHECK(family_contains(family, {2}));
  CHECK(family_contains(family, {0, 1}));
  CHECK(family_contains(family, {0, 1, 2}));
}

TEST_CASE("a single point enumerates to itself") {
  Mat d(1, 1, 0.0);
  const auto family = enumerate_point_like(DissimilaritySpace::from_matrix({}, d));
  REQUIRE(family.sets.size() == 1);
  CHECK(family.sets[0] == std::vector<std::size_t>{0});
  CHECK(family.parent[0] == -1);
}

TEST_CASE("separated blocks appear in the enumerated family") {
  SeparatedBlocks kind{{20, 30, 50}, {}, 25.0};
  const auto space = generate(GeneratorSpec{kind, 3});
  const auto family = enumerate_point_like(space);
  for (const auto& block : generated_blocks(kind)) CHECK(family_contains(family, block));
  std::vector<std::size_t> all(100);
  for (std::size_t i = 0; i < 100; ++i) all[i] = i;
  CHECK(family_contains(family, all));
  CHECK(family_is_laminar(family));
}

TEST_CASE("prefix enumeration matches exhaustive subset enumeration") {
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    const auto space = random_coords_space(4 + seed % 9, seed);
    const auto lazy = induced_triplet(space);
    const auto by_prefix = enumerate_point_like(lazy);
    const auto by_subsets = enumerate_point_like(lazy.densify(), 12);
    REQUIRE(by_prefix.sets.size() == by_subsets.sets.size());
    CHECK(by_prefix.sets == by_subsets.sets);
    CHECK(family_is_laminar(by_prefix));
  }
}

TEST_CASE("general weighted spaces above the cap are refused") {
  const auto dense = random_dense_space(9, 7);
  CHECK_THROWS_WITH_AS(enumerate_point_like(dense, 8), doctest::Contains("cap"),
                       std::invalid_argument);
  CHECK_NOTHROW(enumerate_point_like(dense, 9));
}

TEST_CASE("partitions of the three-point family") {
  const auto partitions = point_like_partitions(enumerate_point_like(three_point()));
  REQUIRE(partitions.size() == 3);
  // sorted coarse to fine: whole set, {0,1}+{2}, singletons
  CHECK(partitions.front().blocks.size() == 3);
  CHECK(partitions.back().blocks == std::vector<std::vector<std::size_t>>{{0, 1, 2}});
  bool has_pair = false;
  for (const auto& p : partitions)
    if (p.blocks == std::vector<std::vector<std::size_t>>{{0, 1}, {2}}) has_pair = true;
  CHECK(has_pair);
}

TEST_CASE("a two-point space has exactly two partitions") {
  Mat d(2, 2, 0.0);
  d(0, 1) = d(1, 0) = 1.0;
  const auto partitions =
      point_like_partitions(enumerate_point_like(DissimilaritySpace::from_matrix({}, d)));
  CHECK(partitions.size() == 2);
}

TEST_CASE("multi-scale structure yields many partitions") {
  const auto family = enumerate_point_like(multi_scale_space());
  // 8 singletons, 4 tight pairs, 2 superclusters, the full set
  CHECK(family.sets.size() == 15);
  const auto partitions = point_like_partitions(family);
  CHECK(partitions.size() == 26);
  CHECK(partitions.size() > 2);
  // both trivial partitions are present
  bool has_singletons = false, has_whole = false;
  for (const auto& p : partitions) {
    if (p.blocks.size() == 8) has_singletons = true;
    if (p.blocks.size() == 1) has_whole = true;
  }
  CHECK(has_singletons);
  CHECK(has_whole);
}

TEST_CASE("identity rescaling returns the same dissimilarities") {
  const auto config = random_point_like(300);
  XTransformation t;
  t.partition = config.partition;
  t.alphas.assign(config.partition.blocks.size(), 1.0);
  t.beta = 1.0;
  const auto out = apply_x_transformation(config.space, t);
  CHECK(max_abs_diff(out.d, config.space.d) == 0.0);
}

TEST_CASE("rescaling a point-like partition preserves comparisons and cohesion") {
  for (std::uint64_t seed = 310; seed < 314; ++seed) {
    const auto config = random_point_like(seed);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> alpha_draw(0.05, 1.0), beta_draw(1.0, 4.0);
    XTransformation t;
    t.partition = config.partition;
    for (std::size_t b = 0; b < config.partition.blocks.size(); ++b)
      t.alphas.push_back(alpha_draw(rng));
    t.beta = beta_draw(rng);

    const auto transformed = apply_x_transformation(config.space, t);
    const auto before = induced_triplet(config.space);
    const auto after = induced_triplet(transformed);
    CHECK(max_entry_diff(before.densify(), after.densify()) == 0.0);
    CHECK(max_abs_diff(cohesion_matrix(before).values, cohesion_matrix(after).values) == 0.0);
  }
}

TEST_CASE("rescaling rejects a partition that is not point-like") {
  XTransformation t;
  t.partition.blocks = {{0, 2}, {1}};  // {0,2} is not point-like in this space
  t.alphas = {0.5, 1.0};
  t.beta = 2.0;
  CHECK_THROWS_WITH_AS(apply_x_transformation(three_point(), t),
                       doctest::Contains("not point-like"), std::invalid_argument);

  XTransformation bad;
  bad.partition.blocks = {{0, 1}, {2}};
  bad.alphas = {1.5, 1.0};  // out of range
  bad.beta = 2.0;
  CHECK_THROWS_AS(apply_x_transformation(three_point(), bad), std::invalid_argument);
  bad.alphas = {0.5, 1.0};
  bad.beta = 0.5;  // below 1
  CHECK_THROWS_AS(apply_x_transformation(three_point(), bad), std::invalid_argument);
}

TEST_CASE("quotient of separated blocks is the weighted three-point example") {
  SeparatedBlocks kind{{20, 30, 50}, {}, 25.0};
  const auto space = generate(GeneratorSpec{kind, 11});
  const auto T = induced_triplet(space);
  PointLikePartition partition{generated_blocks(kind)};
  const auto q = quotient(T, partition);

  REQUIRE(q.space.size() == 3);
  CHECK(q.space.masses()[0] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(q.space.masses()[1] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(q.space.masses()[2] == doctest::Approx(0.5).epsilon(1e-12));

  const auto C = cohesion_matrix(q.space);
  const double expected[3][3] = {{1.6, 0.5, 0.0}, {0.5, 1.4, 0.0}, {0.0, 0.0, 1.0}};
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t w = 0; w < 3; ++w)
      CHECK(C.values(x, w) == doctest::Approx(expected[x][w]).epsilon(1e-12));
}

TEST_CASE("the all-singletons quotient is the original space") {
  const auto space = random_coords_space(6, 330);
  const auto T = induced_triplet(space);
  PointLikePartition singletons;
  for (std::size_t i = 0; i < 6; ++i) singletons.blocks.push_back({i});
  const auto q = quotient(T, singletons);
  CHECK(q.space.labels() == T.labels());
  CHECK(max_entry_diff(q.space, T) == 0.0);
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(q.space.masses()[i] == doctest::Approx(T.masses()[i]).epsilon(1e-15));
}

TEST_CASE("quotient spaces satisfy the comparison axioms") {
  for (std::uint64_t seed = 360; seed < 366; ++seed) {
    const auto config = random_point_like(seed);
    const auto q = quotient(induced_triplet(config.space), config.partition);
    CHECK(validate_axioms(q.space).passed);
    double mass = 0.0;
    for (double m : q.space.masses()) mass += m;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("quotient values do not depend on the representatives") {
  const auto config = random_point_like(340);
  const auto T = induced_triplet(config.space);
  std::vector<std::size_t> first_reps, last_reps;
  for (const auto& block : config.partition.blocks) {
    first_reps.push_back(block.front());
    last_reps.push_back(block.back());
  }
  const auto qa = quotient(T, config.partition, first_reps);
  const auto qb = quotient(T, config.partition, last_reps);
  CHECK(max_entry_diff(qa.space.densify(), qb.space.densify()) == 0.0);
}

TEST_CASE("quotient validates its arguments") {
  const auto T = induced_triplet(three_point());
  PointLikePartition partition{{{0, 1}, {2}}};
  CHECK_THROWS_WITH_AS(quotient(T, partition, std::vector<std::size_t>{2, 2}),
                       doctest::Contains("outside"), std::invalid_argument);
  PointLikePartition bad{{{0, 2}, {1}}};
  CHECK_THROWS_AS(quotient(T, bad), std::invalid_argument);
  PointLikePartition overlap{{{0, 1}, {1, 2}}};
  CHECK_THROWS_AS(quotient(T, overlap), std::invalid_argument);
  PointLikePartition partial{{{0, 1}}};
  CHECK_THROWS_AS(quotient(T, partial), std::invalid_argument);
}

TEST_CASE("subspace restricts values and renormalizes masses") {
  SUBCASE("the full subspace is the identity") {
    const auto T = induced_triplet(random_coords_space(5, 350, true));
    const auto sub = subspace(T, {0, 1, 2, 3, 4});
    CHECK(max_entry_diff(sub, T) == 0.0);
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(sub.masses()[i] == doctest::Approx(T.masses()[i]).epsilon(1e-15));
  }
  SUBCASE("a uniform slice gets uniform masses") {
    const auto T = induced_triplet(random_coords_space(100, 351));
    std::vector<std::size_t> X(20);
    for (std::size_t i = 0; i < 20; ++i) X[i] = i * 5;
    const auto sub = subspace(T, X);
    for (double m : sub.masses()) CHECK(m == doctest::Approx(0.05).epsilon(1e-12));
  }
  SUBCASE("restriction preserves the axioms") {
    const auto dense = random_dense_space(10, 352, true);
    const auto sub = subspace(dense, {1, 3, 4, 7, 8});
    CHECK(validate_axioms(sub).passed);
    CHECK(sub.at(0, 1, 2) == dense.at(1, 3, 4));
  }
  SUBCASE("a zero-mass subspace is rejected") {
    Mat d(3, 3, 0.0);
    d(0, 1) = d(1, 0) = 1.0;
    d(0, 2) = d(2, 0) = 2.0;
    d(1, 2) = d(2, 1) = 3.0;
    const auto T = induced_triplet(DissimilaritySpace::from_matrix({}, d, {0.5, 0.5, 0.0}));
    CHECK_THROWS_WITH_AS(subspace(T, {2}), doctest::Contains("zero total mass"),
                         std::invalid_argument);
  }
}
