#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cohesion/cohesion.hpp"
#include "cohesion/structure.hpp"
#include "cohesion/triplet_space.hpp"
#include "cohesion/types.hpp"

namespace cohesion {

struct CheckResult {
  std::string name;
  bool passed = true;
  double max_residual = 0.0;
  std::vector<std::string> details;  // violating instances, empty iff passed

  CheckResult() = default;
  explicit CheckResult(std::string check_name) : name(std::move(check_name)) {}

  void record(double residual, double tol, const std::string& detail);
};

// Literal evaluation of the cohesion definition, kept free of the row-kernel
// restructuring: the full local-mass table first, then the plain double loop.
// Ground truth for kernel equivalence tests; n <= 2000.
CohesionMatrix brute_force_cohesion(const TripletComparisonSpace& T);

// |sum_{x,w} C(x,w) p_x p_w - 1/2| within tol.
CheckResult check_average_half(const CohesionMatrix& C, const std::vector<double>& p,
                               double tol = 1e-10);

// x and z are mutually outlying when every y is strictly closer to one of
// them than they are to each other: d(x,z) > min(d(x,y), d(y,z)) for all y.
bool mutually_outlying(const DissimilaritySpace& space, std::size_t x, std::size_t z);

// Removing a point z that is mutually outlying with every other point shifts
// cohesion by exactly the outlier's mass: C(x,z) = C(z,x) = 0,
// C(x,w) = C_sub(x,w) + p_z when d(w,x) < d(w,z) and is unchanged otherwise,
// and the outlier's self-cohesion is 1/2 + m(X).  C_sub is computed on the
// subspace without z.
CheckResult check_outlier_influence(const DissimilaritySpace& space, std::size_t z,
                                    TiePolicy policy = {}, double tol = 1e-10);

// With every point of X strictly closer to all of X than to any of Z:
// C(x,z) <= p_Z/(1-p_Z) and p_Z <= C(x,w) - C_X(x,w) <= p_Z/(1-p_Z)
// for x, w in X and z in Z.
CheckResult check_outlier_bounds(const DissimilaritySpace& space,
                                 const std::vector<std::size_t>& Z, TiePolicy policy = {},
                                 double tol = 1e-10);

// Local-mass identities of a point-like partition: within a block
// U(x,y) = m(X_i) U_{X_i}(x,y); across blocks U(x,y) equals the quotient's
// local mass of the two representatives.
CheckResult check_local_mass_quotient(const TripletComparisonSpace& T,
                                      const PointLikePartition& partition,
                                      std::optional<std::vector<std::size_t>> reps = std::nullopt,
                                      double tol = 1e-12);

// Cohesion of a point-like partition decomposes through the quotient:
// across blocks C(x,w) equals the quotient value; within a block
// C(x,w) = C_quot(i,i) + C_{X_i}(x,w) - 1/2; and block-aggregated cohesion
// equals the quotient cohesion weighted by block masses.
CheckResult check_quotient_fractal(const TripletComparisonSpace& T,
                                   const PointLikePartition& partition,
                                   std::optional<std::vector<std::size_t>> reps = std::nullopt,
                                   double tol = 1e-10);

// Self-contained fixture of four weighted planar points where cohesion and
// distance order disagree: C(x1,x2) = 1/3 for every mass p of the far point
// while C(x1,x3) = p, so the order reverses exactly when p > 1/3.
CheckResult check_ordering_example();

struct VerifyOptions {
  std::size_t oracle_cap = 200;     // largest n for the kernel-vs-definition check
  std::size_t enumerate_cap = 128;  // largest n for structure checks
  std::size_t axiom_sample = 20000;
  unsigned threads = 0;
};

// The standard battery run by the command-line `verify`: axioms, the global
// mean, dominance and bound properties, kernel-vs-definition agreement,
// order invariance, the self-contained fixtures, and quotient/local-mass
// identities whenever a non-trivial point-like partition exists.
std::vector<CheckResult> run_standard_checks(const TripletComparisonSpace& T,
                                             const VerifyOptions& options = {});

// Same battery plus the outlier checks, given the dissimilarity space and an
// optional known outlier subset.
std::vector<CheckResult> run_standard_checks(const DissimilaritySpace& space, TiePolicy policy,
                                             const VerifyOptions& options = {},
                                             const std::vector<std::size_t>& outliers = {});

}  // namespace cohesion
