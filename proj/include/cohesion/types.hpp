#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cohesion {

// Row-major dense matrix of doubles.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool operator==(const Mat&) const = default;
};

enum class TieMode { Strict, UniformSplit };

// Resolution of equal dissimilarities inside a comparison triple.
// Strict treats them as an input error; UniformSplit divides the unit of
// outlier mass equally among the pairs attaining the minimum.
struct TiePolicy {
  TieMode mode = TieMode::Strict;
  double epsilon = 0.0;  // distances within epsilon of each other count as equal
};

enum class Metric { Euclidean, Manhattan };

// Finite labeled point set with a symmetric dissimilarity matrix d and a
// probability mass function p.  coords, when present, records the coordinates
// d was derived from; only d enters any computation.
struct DissimilaritySpace {
  std::vector<std::string> labels;
  Mat d;
  std::vector<double> p;
  std::optional<Mat> coords;

  std::size_t size() const { return labels.size(); }

  // Throws std::invalid_argument on any violated invariant: d symmetric,
  // d(x,x) strictly minimal in its row, d non-negative, p a pmf.
  void validate() const;

  static DissimilaritySpace from_matrix(std::vector<std::string> labels, Mat d,
                                        std::vector<double> p = {});
  static DissimilaritySpace from_coords(std::vector<std::string> labels, Mat coords,
                                        Metric metric = Metric::Euclidean,
                                        std::vector<double> p = {});
};

std::vector<std::string> default_labels(std::size_t n);
std::vector<double> uniform_masses(std::size_t n);

// Sum-to-one check used everywhere a pmf is accepted.
void validate_masses(const std::vector<double>& p, std::size_t n);

}  // namespace cohesion
