#pragma once

#include <optional>
#include <vector>

#include "cohesion/triplet_space.hpp"
#include "cohesion/types.hpp"

namespace cohesion {

// values(x, w) is the cohesion of w to x; row x is the focal point.
struct CohesionMatrix {
  std::vector<std::string> labels;
  Mat values;
};

struct LocalDepthVector {
  std::vector<std::string> labels;
  std::vector<double> generalized;  // sum over w of C(x,w) p_w
  std::vector<double> legacy;       // row sums of the classic unweighted matrix; empty when not supplied
};

struct CommunityEdge {
  std::size_t a, b;
  double weight;  // min(C(a,b), C(b,a))
  bool strong;
};

struct CommunityGraph {
  std::vector<std::string> labels;
  std::vector<CommunityEdge> edges;  // pairs with positive weight, a < b
  double threshold;
  std::vector<std::vector<std::size_t>> communities;  // components of the strong edges
};

// Total mass of the fuzzy local set of the pair (x, y):
//   U(x,y) = sum_z (T({x,z},y) + T({y,z},x)) p_z.
// Symmetric in its arguments; U(x,x) = 2 p_x / 3.
double local_mass(const TripletComparisonSpace& T, std::size_t x, std::size_t y);

// All pairwise local masses; U(x,y) in row x, column y.
Mat local_mass_matrix(const TripletComparisonSpace& T);

// The cohesion function
//   C(x,w) = sum_y T({x,w}, y) / U(x,y) * p_y,
// with zero-mass y contributing nothing.  Rows are independent and are
// computed in parallel; threads = 0 picks the hardware concurrency.
CohesionMatrix cohesion_matrix(const TripletComparisonSpace& T, unsigned threads = 0);

// The classic unweighted cohesion: for each opposing y != x, the points of
// the (x,y)-local set U_{x,y} = { z : min(d(x,z), d(y,z)) < d(x,y) } vote for
// the focal point they are strictly closer to, each vote worth 1/#U_{x,y},
// averaged over the n-1 choices of y.  Requires uniform masses and a space
// with no tied comparisons.
Mat legacy_cohesion(const DissimilaritySpace& space);

LocalDepthVector local_depth(const CohesionMatrix& C, const std::vector<double>& p);
LocalDepthVector local_depth(const CohesionMatrix& C, const std::vector<double>& p,
                             const Mat& legacy);

// Thresholded graph on the symmetrized cohesion min(C(x,w), C(w,x)).  The
// default threshold is half the mass-weighted mean self-cohesion; edges at or
// above it are strong, and communities are the connected components of the
// strong edges.
CommunityGraph community_graph(const CohesionMatrix& C, const std::vector<double>& p,
                               std::optional<double> threshold = std::nullopt);

// sum_{x,w} C(x,w) p_x p_w; equals 1/2 for every valid space.
double weighted_mean_cohesion(const CohesionMatrix& C, const std::vector<double>& p);

}  // namespace cohesion
