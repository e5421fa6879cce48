#include "cohesion/types.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cohesion {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "x" + std::to_string(i + 1);
  return labels;
}

std::vector<double> uniform_masses(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

void validate_masses(const std::vector<double>& p, std::size_t n) {
  if (p.size() != n) fail("mass vector has " + std::to_string(p.size()) + " entries, expected " + std::to_string(n));
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p[i] >= 0.0)) fail("mass of point " + std::to_string(i) + " is negative or NaN");
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "masses sum to " << sum << ", expected 1";
    fail(os.str());
  }
}

void DissimilaritySpace::validate() const {
  const std::size_t n = size();
  if (n == 0) fail("space must contain at least one point");
  if (d.rows != n || d.cols != n) fail("dissimilarity matrix is not n x n");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = d(i, j);
      if (!(v >= 0.0)) fail("dissimilarity (" + labels[i] + ", " + labels[j] + ") is negative or NaN");
      if (d(j, i) != v)
        fail("dissimilarity matrix is asymmetric at (" + labels[i] + ", " + labels[j] + ")");
      if (j != i && !(d(i, i) < v))
        fail("self-dissimilarity of " + labels[i] + " is not strictly below d(" + labels[i] +
             ", " + labels[j] + ")");
    }
  }
  validate_masses(p, n);
  if (coords && coords->rows != n) fail("coordinate rows do not match the label count");
}

DissimilaritySpace DissimilaritySpace::from_matrix(std::vector<std::string> labels, Mat d,
                                                   std::vector<double> p) {
  DissimilaritySpace s;
  if (labels.empty()) labels = default_labels(d.rows);
  if (p.empty()) p = uniform_masses(labels.size());
  s.labels = std::move(labels);
  s.d = std::move(d);
  s.p = std::move(p);
  s.validate();
  return s;
}

DissimilaritySpace DissimilaritySpace::from_coords(std::vector<std::string> labels, Mat coords,
                                                   Metric metric, std::vector<double> p) {
  const std::size_t n = coords.rows;
  const std::size_t k = coords.cols;
  Mat d(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dist = 0.0;
      if (metric == Metric::Euclidean) {
        for (std::size_t c = 0; c < k; ++c) {
          const double diff = coords(i, c) - coords(j, c);
          dist += diff * diff;
        }
        dist = std::sqrt(dist);
      } else {
        for (std::size_t c = 0; c < k; ++c) dist += std::abs(coords(i, c) - coords(j, c));
      }
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  DissimilaritySpace s;
  if (labels.empty()) labels = default_labels(n);
  if (p.empty()) p = uniform_masses(n);
  s.labels = std::move(labels);
  s.d = std::move(d);
  s.p = std::move(p);
  s.coords = std::move(coords);
  s.validate();
  return s;
}

}  // namespace cohesion
