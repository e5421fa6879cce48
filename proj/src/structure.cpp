#include "cohesion/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cohesion {

namespace {

constexpr double kDenseTol = 1e-12;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::vector<std::size_t> checked_sorted(const TripletComparisonSpace& T,
                                        const std::vector<std::size_t>& X,
                                        const char* what) {
  if (X.empty()) fail(std::string(what) + " must not be empty");
  std::vector<std::size_t> sorted = X;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.back() >= T.size()) fail(std::string(what) + " references an unknown point index");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(std::string(what) + " contains a repeated point index");
  return sorted;
}

}  // namespace

bool is_point_like(const TripletComparisonSpace& T, const std::vector<std::size_t>& X) {
  const std::size_t n = T.size();
  const std::vector<std::size_t> members = checked_sorted(T, X, "point-like candidate set");
  if (members.size() == 1 || members.size() == n) return true;

  std::vector<char> in_set(n, 0);
  for (std::size_t m : members) in_set[m] = 1;
  const double tol = T.induced() ? 0.0 : kDenseTol;
  const std::size_t x0 = members[0];
  for (std::size_t idx = 1; idx < members.size(); ++idx) {
    const std::size_t x = members[idx];
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (in_set[y] && in_set[z]) continue;
        if (std::abs(T.at(x, y, z) - T.at(x0, y, z)) > tol) return false;
      }
  }
  return true;
}

namespace {

PointLikeFamily build_forest(std::vector<std::vector<std::size_t>> sets) {
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

  PointLikeFamily family;
  family.sets = std::move(sets);
  family.parent.assign(family.sets.size(), -1);
  // Sets are size-ordered, so the first strict superset found is the minimal
  // one (supersets of a common set are nested in a laminar family).
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    for (std::size_t j = i + 1; j < family.sets.size(); ++j) {
      if (family.sets[j].size() <= family.sets[i].size()) continue;
      if (std::includes(family.sets[j].begin(), family.sets[j].end(), family.sets[i].begin(),
                        family.sets[i].end())) {
        family.parent[i] = static_cast<std::ptrdiff_t>(j);
        break;
      }
    }
  }
  return family;
}

PointLikeFamily enumerate_by_prefix(const TripletComparisonSpace& T) {
  const std::size_t n = T.size();
  const Mat& d = T.source()->d;

  // rank(x, y) = how close y is to x (0 = x itself)
  std::vector<std::vector<std::size_t>> order(n), rank(n, std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x) {
    order[x].resize(n);
    std::iota(order[x].begin(), order[x].end(), std::size_t{0});
    std::stable_sort(order[x].begin(), order[x].end(),
                     [&](std::size_t a, std::size_t b) { return d(x, a) < d(x, b); });
    for (std::size_t r = 0; r < n; ++r) rank[x][order[x][r]] = r;
  }

  // A point-like set containing x must consist of the points nearest x, so
  // every candidate is a prefix of some distance ordering.
  std::set<std::vector<std::size_t>> candidates;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> prefix;
    for (std::size_t k = 0; k < n; ++k) {
      prefix.push_back(order[x][k]);
      std::vector<std::size_t> sorted = prefix;
      std::sort(sorted.begin(), sorted.end());
      candidates.insert(std::move(sorted));
    }
  }

  std::vector<std::vector<std::size_t>> accepted;
  for (const auto& candidate : candidates) {
    const std::size_t k = candidate.size();
    // Cheap necessary condition: the members fill the first k ranks of every
    // member's ordering.
    bool mutual_prefix = true;
    for (std::size_t m : candidate) {
      for (std::size_t y : candidate)
        if (rank[m][y] >= k) {
          mutual_prefix = false;
          break;
        }
      if (!mutual_prefix) break;
    }
    if (!mutual_prefix) continue;
    if (is_point_like(T, candidate)) accepted.push_back(candidate);
  }
  return build_forest(std::move(accepted));
}

PointLikeFamily enumerate_by_subsets(const TripletComparisonSpace& T) {
  const std::size_t n = T.size();
  std::vector<std::vector<std::size_t>> accepted;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) subset.push_back(i);
    if (is_point_like(T, subset)) accepted.push_back(std::move(subset));
  }
  return build_forest(std::move(accepted));
}

}  // namespace

PointLikeFamily enumerate_point_like(const TripletComparisonSpace& T,
                                     std::size_t brute_force_cap) {
  PointLikeFamily family;
  if (T.induced()) {
    family = enumerate_by_prefix(T);
  } else {
    if (T.size() > std::min<std::size_t>(brute_force_cap, 63))
      throw std::invalid_argument(
          "enumerating point-like sets of a general weighted space requires testing all "
          "subsets; n = " +
          std::to_string(T.size()) + " exceeds the cap of " + std::to_string(brute_force_cap) +
          ".  Query is_point_like for specific sets instead.");
    family = enumerate_by_subsets(T);
  }
  if (!family_is_laminar(family))
    throw std::logic_error("enumerated point-like family is not laminar");
  return family;
}

PointLikeFamily enumerate_point_like(const DissimilaritySpace& space, TiePolicy policy,
                                     std::size_t brute_force_cap) {
  return enumerate_point_like(induced_triplet(space, policy), brute_force_cap);
}

bool family_is_laminar(const PointLikeFamily& family) {
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    for (std::size_t j = i + 1; j < family.sets.size(); ++j) {
      const auto& a = family.sets[i];
      const auto& b = family.sets[j];
      std::vector<std::size_t> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      if (common.empty()) continue;
      if (common.size() != a.size() && common.size() != b.size()) return false;
    }
  }
  return true;
}

namespace {

void collect_covers(const PointLikeFamily& family,
                    const std::vector<std::vector<std::size_t>>& children, std::size_t node,
                    std::vector<std::vector<std::size_t>>& out) {
  out.push_back({node});
  if (children[node].empty()) return;
  // The children of a node partition it (every singleton is present), so the
  // covers of the node are itself plus every combination of child covers.
  std::vector<std::vector<std::size_t>> product{{}};
  for (std::size_t child : children[node]) {
    std::vector<std::vector<std::size_t>> child_covers;
    collect_covers(family, children, child, child_covers);
    std::vector<std::vector<std::size_t>> next;
    for (const auto& partial : product)
      for (const auto& cover : child_covers) {
        std::vector<std::size_t> merged = partial;
        merged.insert(merged.end(), cover.begin(), cover.end());
        next.push_back(std::move(merged));
      }
    product = std::move(next);
  }
  out.insert(out.end(), product.begin(), product.end());
}

}  // namespace

std::vector<PointLikePartition> point_like_partitions(const PointLikeFamily& family) {
  if (family.sets.empty()) return {};
  if (!family_is_laminar(family))
    throw std::invalid_argument("point-like partitions require a laminar family");

  std::vector<std::vector<std::size_t>> children(family.sets.size());
  std::ptrdiff_t root = -1;
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    if (family.parent[i] < 0) {
      if (root >= 0) throw std::invalid_argument("family must contain the full point set");
      root = static_cast<std::ptrdiff_t>(i);
    } else {
      children[static_cast<std::size_t>(family.parent[i])].push_back(i);
    }
  }
  if (root < 0) throw std::invalid_argument("family has no root set");

  std::vector<std::vector<std::size_t>> covers;
  collect_covers(family, children, static_cast<std::size_t>(root), covers);

  std::vector<PointLikePartition> partitions;
  partitions.reserve(covers.size());
  for (auto& cover : covers) {
    PointLikePartition part;
    for (std::size_t id : cover) part.blocks.push_back(family.sets[id]);
    std::sort(part.blocks.begin(), part.blocks.end());
    partitions.push_back(std::move(part));
  }
  std::sort(partitions.begin(), partitions.end(),
            [](const PointLikePartition& a, const PointLikePartition& b) {
              if (a.blocks.size() != b.blocks.size()) return a.blocks.size() > b.blocks.size();
              return a.blocks < b.blocks;
            });
  return partitions;
}

void validate_point_like_partition(const TripletComparisonSpace& T,
                                   const PointLikePartition& partition) {
  const std::size_t n = T.size();
  std::vector<char> seen(n, 0);
  std::size_t covered = 0;
  for (const auto& block : partition.blocks) {
    if (block.empty()) fail("partition contains an empty block");
    for (std::size_t idx : block) {
      if (idx >= n) fail("partition references an unknown point index");
      if (seen[idx]) fail("partition blocks overlap at point index " + std::to_string(idx));
      seen[idx] = 1;
      ++covered;
    }
  }
  if (covered != n) fail("partition does not cover every point");
  for (std::size_t b = 0; b < partition.blocks.size(); ++b)
    if (!is_point_like(T, partition.blocks[b]))
      fail("partition block " + std::to_string(b) + " is not point-like");
}

DissimilaritySpace apply_x_transformation(const DissimilaritySpace& space,
                                          const XTransformation& t) {
  space.validate();
  const std::size_t n = space.size();
  const std::size_t blocks = t.partition.blocks.size();
  if (t.alphas.size() != blocks)
    fail("need one within-block factor per block (" + std::to_string(blocks) + ")");
  for (double a : t.alphas)
    if (!(a > 0.0 && a <= 1.0)) fail("within-block factors must lie in (0, 1]");
  if (!(t.beta >= 1.0)) fail("the between-block factor must be at least 1");

  // Consistency of the comparisons under the rescaling needs the blocks to be
  // point-like; the split policy keeps the check total in the presence of ties.
  validate_point_like_partition(induced_triplet(space, TiePolicy{TieMode::UniformSplit, 0.0}),
                                t.partition);

  std::vector<std::size_t> block_of(n);
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t idx : t.partition.blocks[b]) block_of[idx] = b;

  DissimilaritySpace out;
  out.labels = space.labels;
  out.p = space.p;
  out.d = Mat(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.d(i, j) =
          block_of[i] == block_of[j] ? t.alphas[block_of[i]] * space.d(i, j) : t.beta * space.d(i, j);
  out.validate();
  return out;
}

namespace {

DissimilaritySpace restrict_space(const DissimilaritySpace& parent,
                                  const std::vector<std::size_t>& indices,
                                  std::vector<double> masses) {
  DissimilaritySpace out;
  const std::size_t k = indices.size();
  out.labels.reserve(k);
  for (std::size_t idx : indices) out.labels.push_back(parent.labels[idx]);
  out.d = Mat(k, k, 0.0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) out.d(a, b) = parent.d(indices[a], indices[b]);
  out.p = std::move(masses);
  if (parent.coords) {
    Mat c(k, parent.coords->cols, 0.0);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t col = 0; col < parent.coords->cols; ++col)
        c(a, col) = (*parent.coords)(indices[a], col);
    out.coords = std::move(c);
  }
  out.validate();
  return out;
}

TripletComparisonSpace restrict_triplets(const TripletComparisonSpace& T,
                                         const std::vector<std::size_t>& indices,
                                         std::vector<double> masses) {
  if (T.induced())
    return TripletComparisonSpace::from_dissimilarity(
        restrict_space(*T.source(), indices, std::move(masses)), T.tie_policy());
  std::vector<std::string> labels;
  labels.reserve(indices.size());
  for (std::size_t idx : indices) labels.push_back(T.labels()[idx]);
  const std::size_t k = indices.size();
  std::vector<double> tensor(k * (k + 1) / 2 * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        tensor[TripletComparisonSpace::dense_index(k, a, b, c)] =
            T.at(indices[a], indices[b], indices[c]);
  return TripletComparisonSpace::from_dense(std::move(labels), std::move(masses),
                                            std::move(tensor));
}

}  // namespace

QuotientSpace quotient(const TripletComparisonSpace& T, const PointLikePartition& partition,
                       std::optional<std::vector<std::size_t>> reps) {
  validate_point_like_partition(T, partition);
  const std::size_t blocks = partition.blocks.size();

  std::vector<std::size_t> representatives;
  if (reps) {
    if (reps->size() != blocks) fail("need one representative per block");
    for (std::size_t b = 0; b < blocks; ++b) {
      const auto& block = partition.blocks[b];
      if (std::find(block.begin(), block.end(), (*reps)[b]) == block.end())
        fail("representative " + std::to_string((*reps)[b]) + " lies outside block " +
             std::to_string(b));
    }
    representatives = *reps;
  } else {
    representatives.reserve(blocks);
    for (const auto& block : partition.blocks)
      representatives.push_back(*std::min_element(block.begin(), block.end()));
  }

  std::vector<double> block_mass(blocks, 0.0);
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t idx : partition.blocks[b]) block_mass[b] += T.masses()[idx];

  QuotientSpace q{representatives, restrict_triplets(T, representatives, std::move(block_mass))};
  return q;
}

TripletComparisonSpace subspace(const TripletComparisonSpace& T,
                                const std::vector<std::size_t>& X) {
  const std::vector<std::size_t> indices = checked_sorted(T, X, "subspace index set");
  double mass = 0.0;
  for (std::size_t idx : indices) mass += T.masses()[idx];
  if (!(mass > 0.0))
    fail("subspace has zero total mass; the renormalized masses are undefined");
  std::vector<double> masses;
  masses.reserve(indices.size());
  for (std::size_t idx : indices) masses.push_back(T.masses()[idx] / mass);
  return restrict_triplets(T, indices, std::move(masses));
}

}  // namespace cohesion
