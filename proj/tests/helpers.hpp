#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cohesion/cohesion.hpp"
#include "cohesion/generators.hpp"
#include "cohesion/structure.hpp"
#include "cohesion/triplet_space.hpp"
#include "cohesion/types.hpp"

namespace test_helpers {

using namespace cohesion;

inline std::vector<double> random_masses(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> exp_draw(1.0);
  std::vector<double> p(n);
  double sum = 0.0;
  for (double& v : p) {
    v = exp_draw(rng) + 1e-3;
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

inline DissimilaritySpace random_coords_space(std::size_t n, std::uint64_t seed,
                                              bool weighted = false, std::size_t dims = 2) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  Mat coords(n, dims, 0.0);
  for (double& v : coords.data) v = u(rng);
  std::vector<double> p;
  if (weighted) p = random_masses(n, rng);
  return DissimilaritySpace::from_coords({}, std::move(coords), Metric::Euclidean, std::move(p));
}

// Axiom-valid dense space: each triple's outlier weights are a random point
// of the simplex, degenerate entries at their forced values.
inline TripletComparisonSpace random_dense_space(std::size_t n, std::uint64_t seed,
                                                 bool weighted = false) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exp_draw(1.0);
  std::vector<double> tensor(n * (n + 1) / 2 * n, 0.0);
  const auto idx = [n](std::size_t i, std::size_t j, std::size_t k) {
    return TripletComparisonSpace::dense_index(n, i, j, k);
  };
  for (std::size_t i = 0; i < n; ++i) {
    tensor[idx(i, i, i)] = 1.0 / 3.0;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) tensor[idx(i, i, k)] = 1.0;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        double g1 = exp_draw(rng), g2 = exp_draw(rng), g3 = exp_draw(rng);
        const double sum = g1 + g2 + g3;
        tensor[idx(b, c, a)] = g1 / sum;
        tensor[idx(a, c, b)] = g2 / sum;
        tensor[idx(a, b, c)] = g3 / sum;
      }
  std::vector<double> p =
      weighted ? random_masses(n, rng) : uniform_masses(n);
  return TripletComparisonSpace::from_dense(default_labels(n), std::move(p), std::move(tensor));
}

struct PointLikeConfig {
  DissimilaritySpace space;
  PointLikePartition partition;
};

// Certified point-like blocks with random sizes and within-block scales.
inline PointLikeConfig random_point_like(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::size_t> block_count(2, 4), block_size(2, 6);
  std::uniform_real_distribution<double> scale(0.3, 1.0);
  SeparatedBlocks kind;
  const std::size_t blocks = block_count(rng);
  for (std::size_t b = 0; b < blocks; ++b) {
    kind.sizes.push_back(block_size(rng));
    kind.intra_scales.push_back(scale(rng));
  }
  kind.inter_scale = 150.0;
  PointLikeConfig config{generate(GeneratorSpec{kind, seed}), {}};
  config.partition.blocks = generated_blocks(kind);
  return config;
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    out = std::max(out, std::abs(a.data[i] - b.data[i]));
  return out;
}

inline double max_entry_diff(const TripletComparisonSpace& a, const TripletComparisonSpace& b) {
  double out = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        out = std::max(out, std::abs(a.at(i, j, k) - b.at(i, j, k)));
  return out;
}

}  // namespace test_helpers
