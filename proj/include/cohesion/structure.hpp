#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cohesion/triplet_space.hpp"
#include "cohesion/types.hpp"

namespace cohesion {

// A set X is point-like when every member answers every comparison query
// involving points outside X identically: T({x,y},z) = T({x',y},z) for all
// x, x' in X and y, z not both in X.  Exact equality for induced spaces,
// tolerance 1e-12 for dense weighted tensors.
bool is_point_like(const TripletComparisonSpace& T, const std::vector<std::size_t>& X);

// All point-like subsets, stored as a containment forest.  Any two member
// sets are disjoint or nested; the family always contains every singleton and
// the full set.
struct PointLikeFamily {
  std::vector<std::vector<std::size_t>> sets;  // each sorted ascending
  std::vector<std::ptrdiff_t> parent;          // index into sets; -1 for the root
};

// Enumerates every point-like subset.  Induced spaces use the prefix-candidate
// search: a point-like set containing x consists of the points nearest to x,
// so only the n^2 sorted prefixes need testing.  General dense spaces fall
// back to testing all subsets and require n <= brute_force_cap.
PointLikeFamily enumerate_point_like(const TripletComparisonSpace& T,
                                     std::size_t brute_force_cap = 16);
PointLikeFamily enumerate_point_like(const DissimilaritySpace& space, TiePolicy policy = {},
                                     std::size_t brute_force_cap = 16);

// Disjoint-or-nested check over all pairs of member sets.
bool family_is_laminar(const PointLikeFamily& family);

struct PointLikePartition {
  std::vector<std::vector<std::size_t>> blocks;  // disjoint cover, each sorted
};

// All partitions of the ground set into members of the family, from the
// antichain covers of the containment forest.  Always contains the
// all-singletons and whole-set partitions.
std::vector<PointLikePartition> point_like_partitions(const PointLikeFamily& family);

// Rescales distances by alpha_i inside block i and by beta across blocks.
struct XTransformation {
  PointLikePartition partition;
  std::vector<double> alphas;  // one per block, each in (0, 1]
  double beta = 1.0;           // >= 1
};

// Applies the transformation; masses are unchanged.  The partition must be
// point-like for the space, which makes every outlier comparison (and hence
// the induced comparison function and cohesion) invariant.
DissimilaritySpace apply_x_transformation(const DissimilaritySpace& space,
                                          const XTransformation& t);

// One representative per block with the block's total mass; the comparison
// function is the restriction to the representatives.  Point-likeness makes
// the result independent of which representatives are chosen.
struct QuotientSpace {
  std::vector<std::size_t> representatives;  // index into the parent space, one per block
  TripletComparisonSpace space;
};

QuotientSpace quotient(const TripletComparisonSpace& T, const PointLikePartition& partition,
                       std::optional<std::vector<std::size_t>> reps = std::nullopt);

// Restriction to X with masses renormalized by m(X); requires m(X) > 0.
TripletComparisonSpace subspace(const TripletComparisonSpace& T,
                                const std::vector<std::size_t>& X);

// Validates that blocks are disjoint, cover every index, and are each
// point-like; throws std::invalid_argument otherwise.
void validate_point_like_partition(const TripletComparisonSpace& T,
                                   const PointLikePartition& partition);

}  // namespace cohesion
