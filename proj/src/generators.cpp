#include "cohesion/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "cohesion/structure.hpp"
#include "cohesion/triplet_space.hpp"
#include "cohesion/verify.hpp"

namespace cohesion {

namespace {

std::pair<double, double> disk_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = std::sqrt(unit(rng));
  const double theta = 2.0 * std::numbers::pi * unit(rng);
  return {r * std::cos(theta), r * std::sin(theta)};
}

DissimilaritySpace make_chain(const GeometricChain& kind) {
  if (kind.n == 0) throw std::invalid_argument("chain needs at least one point");
  if (!(kind.epsilon >= 0.0)) throw std::invalid_argument("chain epsilon must be non-negative");
  Mat coords(kind.n, 1, 0.0);
  const double ratio = 1.0 / (2.0 + kind.epsilon);
  double value = 1.0;
  for (std::size_t i = 0; i < kind.n; ++i) {
    value *= ratio;
    coords(i, 0) = value;
  }
  return DissimilaritySpace::from_coords({}, std::move(coords));
}

// Scalene center template for up to three blocks: pair distances scale as
// 1 : 1.35 : 1.8, far enough apart that unit-radius blocks stay point-like.
constexpr double kTemplateCenters[3][2] = {{0.0, 0.0}, {1.0, 0.0}, {-0.20875, 1.3338}};

std::pair<double, double> block_center(std::size_t k, std::size_t total, double scale) {
  if (total <= 3) return {kTemplateCenters[k][0] * scale, kTemplateCenters[k][1] * scale};
  const double theta = 2.399963 * static_cast<double>(k);
  const double rad = (0.85 + 0.45 * static_cast<double>(k)) * scale;
  return {rad * std::cos(theta), rad * std::sin(theta)};
}

DissimilaritySpace make_blocks(const SeparatedBlocks& kind, std::uint64_t seed) {
  const std::size_t blocks = kind.sizes.size();
  if (blocks == 0) throw std::invalid_argument("need at least one block");
  std::vector<double> intra = kind.intra_scales;
  if (intra.empty()) intra.assign(blocks, 1.0);
  if (intra.size() != blocks)
    throw std::invalid_argument("need one within-block scale per block");
  for (std::size_t s : kind.sizes)
    if (s == 0) throw std::invalid_argument("block sizes must be positive");
  for (double s : intra)
    if (!(s > 0.0)) throw std::invalid_argument("within-block scales must be positive");
  if (!(kind.inter_scale > 0.0))
    throw std::invalid_argument("the between-block scale must be positive");

  std::size_t total = 0;
  for (std::size_t s : kind.sizes) total += s;

  std::mt19937_64 rng(seed);
  Mat coords(total, 2, 0.0);
  std::size_t row = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    const auto [cx, cy] = block_center(b, blocks, kind.inter_scale);
    for (std::size_t i = 0; i < kind.sizes[b]; ++i, ++row) {
      const auto [dx, dy] = disk_point(rng);
      coords(row, 0) = cx + intra[b] * dx;
      coords(row, 1) = cy + intra[b] * dy;
    }
  }

  DissimilaritySpace space = DissimilaritySpace::from_coords({}, std::move(coords));
  const TripletComparisonSpace probe =
      induced_triplet(space, TiePolicy{TieMode::UniformSplit, 0.0});
  for (const auto& block : generated_blocks(kind))
    if (!is_point_like(probe, block))
      throw std::runtime_error(
          "generated blocks are not point-like; increase inter_scale relative to the "
          "within-block scales");
  return space;
}

DissimilaritySpace make_ball(const BallWithOutliers& kind, std::uint64_t seed) {
  if (kind.n_ball == 0) throw std::invalid_argument("the ball needs at least one point");
  if (!(kind.radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  if (kind.n_out > 0 && !(kind.outlier_distance > 0.0))
    throw std::invalid_argument("outlier distance must be positive");

  std::mt19937_64 rng(seed);
  const std::size_t total = kind.n_ball + kind.n_out;
  Mat coords(total, 2, 0.0);
  for (std::size_t i = 0; i < kind.n_ball; ++i) {
    const auto [dx, dy] = disk_point(rng);
    coords(i, 0) = kind.radius * dx;
    coords(i, 1) = kind.radius * dy;
  }
  for (std::size_t k = 0; k < kind.n_out; ++k) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(kind.n_out) + 0.15;
    const double rad = kind.outlier_distance * (1.0 + 0.04 * static_cast<double>(k));
    coords(kind.n_ball + k, 0) = rad * std::cos(theta);
    coords(kind.n_ball + k, 1) = rad * std::sin(theta);
  }

  DissimilaritySpace space = DissimilaritySpace::from_coords({}, std::move(coords));
  double max_within = 0.0;
  for (std::size_t a = 0; a < kind.n_ball; ++a)
    for (std::size_t b = a + 1; b < kind.n_ball; ++b)
      max_within = std::max(max_within, space.d(a, b));
  for (std::size_t a = 0; a < kind.n_ball; ++a)
    for (std::size_t z = kind.n_ball; z < total; ++z)
      if (!(max_within < space.d(a, z)))
        throw std::runtime_error(
            "generated outliers are not separated from the ball; increase outlier_distance");
  return space;
}

DissimilaritySpace make_ordering(const OrderingExample& kind) {
  if (!(kind.p >= 0.0 && kind.p < 1.0))
    throw std::invalid_argument("the far point's mass must lie in [0, 1)");
  Mat coords(4, 2, 0.0);
  const double pts[4][2] = {{0.0, 0.0}, {4.0, 0.0}, {0.0, 5.0}, {6.0, 0.0}};
  for (std::size_t i = 0; i < 4; ++i) {
    coords(i, 0) = pts[i][0];
    coords(i, 1) = pts[i][1];
  }
  const double rest = (1.0 - kind.p) / 3.0;
  return DissimilaritySpace::from_coords({}, std::move(coords), Metric::Euclidean,
                                         {rest, rest, rest, kind.p});
}

DissimilaritySpace make_four_group() {
  Mat coords(5, 2, 0.0);
  const double pts[5][2] = {
      {0.0, 0.0}, {1.13, 0.21}, {0.34, 0.97}, {1.42, 1.30}, {50.0, 17.0}};
  for (std::size_t i = 0; i < 5; ++i) {
    coords(i, 0) = pts[i][0];
    coords(i, 1) = pts[i][1];
  }
  DissimilaritySpace space = DissimilaritySpace::from_coords(
      {}, std::move(coords), Metric::Euclidean,
      {3.0 / 16.0, 3.0 / 16.0, 3.0 / 16.0, 3.0 / 16.0, 0.25});
  for (std::size_t x = 0; x < 4; ++x)
    if (!mutually_outlying(space, x, 4))
      throw std::runtime_error("fixture outlier is not mutually outlying with the group");
  return space;
}

}  // namespace

DissimilaritySpace generate(const GeneratorSpec& spec) {
  if (const auto* chain = std::get_if<GeometricChain>(&spec.kind)) return make_chain(*chain);
  if (const auto* blocks = std::get_if<SeparatedBlocks>(&spec.kind))
    return make_blocks(*blocks, spec.seed);
  if (const auto* ball = std::get_if<BallWithOutliers>(&spec.kind))
    return make_ball(*ball, spec.seed);
  if (const auto* ordering = std::get_if<OrderingExample>(&spec.kind))
    return make_ordering(*ordering);
  return make_four_group();
}

std::vector<std::vector<std::size_t>> generated_blocks(const SeparatedBlocks& kind) {
  std::vector<std::vector<std::size_t>> blocks;
  std::size_t offset = 0;
  for (std::size_t size : kind.sizes) {
    std::vector<std::size_t> block(size);
    for (std::size_t i = 0; i < size; ++i) block[i] = offset + i;
    blocks.push_back(std::move(block));
    offset += size;
  }
  return blocks;
}

std::vector<std::size_t> generated_outliers(const BallWithOutliers& kind) {
  std::vector<std::size_t> out(kind.n_out);
  for (std::size_t i = 0; i < kind.n_out; ++i) out[i] = kind.n_ball + i;
  return out;
}

}  // namespace cohesion
