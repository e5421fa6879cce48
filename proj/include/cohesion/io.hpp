#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohesion/cohesion.hpp"
#include "cohesion/structure.hpp"
#include "cohesion/triplet_space.hpp"
#include "cohesion/types.hpp"
#include "cohesion/verify.hpp"

namespace cohesion::io {

inline constexpr int kSchemaVersion = 1;

// Parse errors carry "<path>:<line>: <message>".
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Square numeric matrix with an optional header row and/or label column.
DissimilaritySpace read_distance_csv(const std::string& path,
                                     const std::optional<std::string>& mass_path = {});

// One row per point; an optional `label` column (or a leading non-numeric
// column) names the points, every other column is a coordinate.
DissimilaritySpace read_coords_csv(const std::string& path, Metric metric = Metric::Euclidean,
                                   const std::optional<std::string>& mass_path = {});

// Lines `i j k` are raw responses (one count each); lines `i j k w` assign
// T({i,j},k) = w directly.  The two forms cannot be mixed in one file.
// Unmentioned entries of a partially specified triple share the remaining
// weight equally; untouched triples get 1/3 apiece.
TripletComparisonSpace read_triplet_file(const std::string& path,
                                         const std::optional<std::string>& mass_path = {});

// Lines `label p`; every label of the space exactly once.
std::vector<double> read_mass_file(const std::string& path,
                                   const std::vector<std::string>& labels);

// Lines `label block_id`; blocks ordered by first appearance.
PointLikePartition read_partition_file(const std::string& path,
                                       const std::vector<std::string>& labels);

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& labels, const Mat& m);
void write_coords_csv(std::ostream& out, const DissimilaritySpace& space);
void write_mass_file(std::ostream& out, const DissimilaritySpace& space);

std::string cohesion_json(const CohesionMatrix& C, const std::vector<double>& p);
std::string family_json(const PointLikeFamily& family, const std::vector<std::string>& labels);
std::string partitions_json(const std::vector<PointLikePartition>& partitions,
                            const std::vector<std::string>& labels);
std::string quotient_json(const QuotientSpace& q, const std::vector<std::string>& parent_labels,
                          const CohesionMatrix& quotient_cohesion);
std::string check_results_json(const std::vector<CheckResult>& results);

void write_communities_dot(std::ostream& out, const CommunityGraph& g);
void write_communities_csv(std::ostream& out, const CommunityGraph& g);

}  // namespace cohesion::io
