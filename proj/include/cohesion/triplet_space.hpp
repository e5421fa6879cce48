#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "cohesion/types.hpp"

namespace cohesion {

// Value of the comparison function for a triple of distinct points with pair
// dissimilarity d_pair and the two dissimilarities to the candidate outlier.
// Returns the share of the unit outlier mass assigned to the pair: 1 when the
// pair is strictly closest, 1/#tied when tied at the minimum, 0 otherwise.
inline double induced_share(double d_pair, double d_a, double d_b, double epsilon) {
  const double m = std::min({d_pair, d_a, d_b});
  const int tie_pair = d_pair <= m + epsilon;
  const int ties = tie_pair + (d_a <= m + epsilon) + (d_b <= m + epsilon);
  return tie_pair ? 1.0 / ties : 0.0;
}

// One crowdsourced answer: for the displayed triple {i, j, k}, "i and j are
// most alike" (k is the outlier), observed `count` times.
struct OutlierResponse {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  double count = 1.0;
};

struct AxiomViolation {
  std::size_t i, j, k;
  int axiom;        // 1 = degenerate entries, 3 = unit triple sum, 4 = range
  double residual;
};

struct AxiomReport {
  bool passed = true;
  std::vector<AxiomViolation> violations;
};

// Weighted responses to standard queries, keyed by ordered triple (x, y, z)
// meaning the weight given to "d(x,y) < d(x,z)".  Complements are filled in
// automatically; supplying both directions with weights not summing to one is
// an error.  Missing viewpoints default to 1/2.
class StandardQueryMarginals {
 public:
  void set(std::size_t x, std::size_t y, std::size_t z, double weight);
  double get(std::size_t x, std::size_t y, std::size_t z) const;
  const std::map<std::array<std::size_t, 3>, double>& raw() const { return values_; }

 private:
  std::map<std::array<std::size_t, 3>, double> values_;
};

// A finite labeled set together with a triplet comparison function and a
// probability mass function.  Immutable after construction; safe to share
// across threads.  Two storage backends: a dense tensor over unordered pairs,
// or lazy evaluation against a retained dissimilarity space.
class TripletComparisonSpace {
 public:
  // T({i,j}, k): the weight with which k is the outlier of the triple.
  double at(std::size_t i, std::size_t j, std::size_t k) const;

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& masses() const { return p_; }

  bool induced() const { return source_ != nullptr; }
  bool dense() const { return dense_ != nullptr; }
  const DissimilaritySpace* source() const { return source_.get(); }
  const TiePolicy& tie_policy() const { return policy_; }

  // Materializes every entry into a dense tensor.
  TripletComparisonSpace densify() const;

  static TripletComparisonSpace from_dissimilarity(DissimilaritySpace space, TiePolicy policy);
  static TripletComparisonSpace from_dense(std::vector<std::string> labels,
                                           std::vector<double> p,
                                           std::vector<double> tensor);

  // Index of the dense entry for unordered pair {i,j} and outlier k.
  static std::size_t dense_index(std::size_t n, std::size_t i, std::size_t j, std::size_t k);

 private:
  TripletComparisonSpace() = default;

  std::vector<std::string> labels_;
  std::vector<double> p_;
  std::shared_ptr<const DissimilaritySpace> source_;  // lazy backend
  TiePolicy policy_{};
  std::shared_ptr<const std::vector<double>> dense_;  // dense backend
};

// Comparison function induced by the dissimilarities: the pair strictly
// closer than both its members are to the third point carries weight 1.
// Lazy backend; call .densify() when a stored tensor is wanted.
// Under a strict policy, rows with equal entries are rejected up front and
// the offending pair of comparisons is named.
TripletComparisonSpace induced_triplet(DissimilaritySpace space, TiePolicy policy = {});

// Aggregates "which two are most alike?" responses.  Each triple's entries
// are the response fractions; triples nobody answered get 1/3 apiece.
TripletComparisonSpace aggregate_outlier_responses(std::vector<std::string> labels,
                                                   std::vector<double> p,
                                                   const std::vector<OutlierResponse>& responses);

// Converts standard-query response weights into outlier weights: concordant
// rankings decide the outlier outright, the two disconcordant (circular)
// rankings spread 1/3 to each assignment.
TripletComparisonSpace aggregate_standard_queries(std::vector<std::string> labels,
                                                  std::vector<double> p,
                                                  const StandardQueryMarginals& marginals);

// Checks degenerate entries, the unit triple sum and the [0,1] range.  Dense
// spaces are checked exhaustively; lazy ones on the given sample (all triples
// when the sample is empty and n is small) plus all degenerate entries.
AxiomReport validate_axioms(const TripletComparisonSpace& T,
                            std::span<const std::array<std::size_t, 3>> sample = {});

std::vector<std::array<std::size_t, 3>> sample_triples(std::size_t n, std::size_t count,
                                                       std::uint64_t seed);

}  // namespace cohesion
