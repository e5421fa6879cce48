#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "cohesion/types.hpp"

namespace cohesion {

// One-dimensional points x_i = 1/(2+epsilon)^i; the configuration attaining
// the maximum cohesion values under uniform masses.
struct GeometricChain {
  std::size_t n = 5;
  double epsilon = 0.1;
};

// Planar blocks of the given sizes, each a uniform draw from a disk of radius
// intra_scales[i], centered far enough apart (controlled by inter_scale) that
// every block is point-like.  Certified after generation.
struct SeparatedBlocks {
  std::vector<std::size_t> sizes;
  std::vector<double> intra_scales;  // empty = all 1.0
  double inter_scale = 25.0;
};

// Uniform points in a disk plus distant outliers at staggered radii, placed
// so that the outliers are pairwise mutually outlying.  Certified after
// generation.
struct BallWithOutliers {
  std::size_t n_ball = 90;
  std::size_t n_out = 10;
  double radius = 1.0;
  double outlier_distance = 10.0;
};

// The four weighted planar points of the distance/cohesion order-reversal
// fixture; p is the mass of the far point.
struct OrderingExample {
  double p = 0.5;
};

// A tight group of four points (uniform mass 3/16 each) plus one far point of
// mass 1/4 that is mutually outlying with every group member.
struct FourGroupOutlier {};

struct GeneratorSpec {
  std::variant<GeometricChain, SeparatedBlocks, BallWithOutliers, OrderingExample,
               FourGroupOutlier>
      kind;
  std::uint64_t seed = 0;
};

// Deterministic for a given spec and seed.  Throws std::runtime_error when a
// generated configuration fails its structural certificate (blocks not
// point-like, outliers not separated or not pairwise mutually outlying).
DissimilaritySpace generate(const GeneratorSpec& spec);

// Block index ranges of the most recent structure-bearing kinds, for callers
// that need the certified partition/outlier set.
std::vector<std::vector<std::size_t>> generated_blocks(const SeparatedBlocks& kind);
std::vector<std::size_t> generated_outliers(const BallWithOutliers& kind);

}  // namespace cohesion
