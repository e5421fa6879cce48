#include "cohesion/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cohesion/generators.hpp"

namespace cohesion {

namespace {

constexpr std::size_t kMaxDetails = 16;

std::string triple_name(const std::vector<std::string>& labels, std::size_t x, std::size_t y) {
  return "(" + labels[x] + ", " + labels[y] + ")";
}

}  // namespace

void CheckResult::record(double residual, double tol, const std::string& detail) {
  max_residual = std::max(max_residual, residual);
  if (residual > tol) {
    passed = false;
    if (details.size() < kMaxDetails)
      details.push_back(detail);
    else if (details.size() == kMaxDetails)
      details.push_back("... further violations suppressed");
  }
}

CohesionMatrix brute_force_cohesion(const TripletComparisonSpace& T) {
  const std::size_t n = T.size();
  if (n > 2000) throw std::invalid_argument("brute-force evaluation is capped at n = 2000");
  const std::vector<double>& p = T.masses();

  Mat u(n, n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      double sum = 0.0;
      for (std::size_t z = 0; z < n; ++z) sum += (T.at(x, z, y) + T.at(y, z, x)) * p[z];
      u(x, y) = sum;
    }

  Mat C(n, n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t w = 0; w < n; ++w) {
      double sum = 0.0;
      for (std::size_t y = 0; y < n; ++y) {
        if (p[y] == 0.0) continue;
        if (!(u(x, y) > 0.0))
          throw std::logic_error("local mass vanished for a pair with positive opposing mass");
        sum += T.at(x, w, y) / u(x, y) * p[y];
      }
      C(x, w) = sum;
    }
  return CohesionMatrix{T.labels(), std::move(C)};
}

CheckResult check_average_half(const CohesionMatrix& C, const std::vector<double>& p,
                               double tol) {
  CheckResult result{"average-cohesion-one-half"};
  const double mean = weighted_mean_cohesion(C, p);
  std::ostringstream os;
  os << "weighted mean cohesion is " << mean << ", expected 0.5";
  result.record(std::abs(mean - 0.5), tol, os.str());
  return result;
}

bool mutually_outlying(const DissimilaritySpace& space, std::size_t x, std::size_t z) {
  if (x == z) throw std::invalid_argument("mutually outlying is a relation on distinct points");
  const std::size_t n = space.size();
  const Mat& d = space.d;
  for (std::size_t y = 0; y < n; ++y)
    if (!(d(x, z) > std::min(d(x, y), d(y, z)))) return false;
  return true;
}

namespace {

// Throws unless z is mutually outlying with every other point; the error
// names a witness pair.
void require_fully_outlying(const DissimilaritySpace& space, std::size_t z) {
  const std::size_t n = space.size();
  const Mat& d = space.d;
  for (std::size_t x = 0; x < n; ++x) {
    if (x == z) continue;
    for (std::size_t y = 0; y < n; ++y) {
      if (!(d(x, z) > std::min(d(x, y), d(y, z)))) {
        std::ostringstream os;
        os << "point " << space.labels[z] << " is not mutually outlying with "
           << space.labels[x] << ": witness " << space.labels[y] << " has min(d(x,y), d(y,z)) = "
           << std::min(d(x, y), d(y, z)) << " >= d(x,z) = " << d(x, z);
        throw std::invalid_argument(os.str());
      }
    }
  }
}

}  // namespace

CheckResult check_outlier_influence(const DissimilaritySpace& space, std::size_t z,
                                    TiePolicy policy, double tol) {
  space.validate();
  const std::size_t n = space.size();
  if (z >= n) throw std::invalid_argument("outlier index out of range");
  if (n < 2) throw std::invalid_argument("outlier influence needs at least two points");
  require_fully_outlying(space, z);

  const TripletComparisonSpace T = induced_triplet(space, policy);
  const CohesionMatrix C = cohesion_matrix(T);

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (i != z) rest.push_back(i);
  const TripletComparisonSpace sub = subspace(T, rest);
  const CohesionMatrix Csub = cohesion_matrix(sub);
  const double pz = space.p[z];

  CheckResult result{"outlier-influence"};
  const auto sub_index = [z](std::size_t i) { return i < z ? i : i - 1; };
  for (std::size_t x : rest) {
    result.record(std::abs(C.values(x, z)), tol,
                  "cohesion of the outlier to " + space.labels[x] + " is nonzero");
    result.record(std::abs(C.values(z, x)), tol,
                  "cohesion of " + space.labels[x] + " to the outlier is nonzero");
    for (std::size_t w : rest) {
      const bool shifted = space.d(w, x) < space.d(w, z);
      const double expected =
          Csub.values(sub_index(x), sub_index(w)) + (shifted ? pz : 0.0);
      std::ostringstream os;
      os << "cohesion at " << triple_name(space.labels, x, w) << " is " << C.values(x, w)
         << ", expected " << expected << (shifted ? " (shifted by the outlier mass)" : "");
      result.record(std::abs(C.values(x, w) - expected), tol, os.str());
    }
  }
  // Every local set of the outlier carries full mass, so its self-cohesion is
  // the single-point value 1/2 plus the mass of everything else.  The 1/2 is
  // the diagonal term of the sum and vanishes with the outlier's own mass.
  const double expected_self = (pz > 0.0 ? 0.5 : 0.0) + (1.0 - pz);
  result.record(std::abs(C.values(z, z) - expected_self), tol,
                "outlier self-cohesion differs from 1/2 + m(rest)");
  return result;
}

CheckResult check_outlier_bounds(const DissimilaritySpace& space,
                                 const std::vector<std::size_t>& Z, TiePolicy policy,
                                 double tol) {
  space.validate();
  const std::size_t n = space.size();
  std::vector<char> in_Z(n, 0);
  for (std::size_t z : Z) {
    if (z >= n) throw std::invalid_argument("outlier index out of range");
    in_Z[z] = 1;
  }
  std::vector<std::size_t> X;
  for (std::size_t i = 0; i < n; ++i)
    if (!in_Z[i]) X.push_back(i);
  if (X.empty()) throw std::invalid_argument("outlier set must not cover the whole space");

  // separation precondition: every within-group distance is below every
  // group-to-outlier distance
  double max_within = -std::numeric_limits<double>::infinity();
  std::size_t wa = 0, wb = 0;
  for (std::size_t a : X)
    for (std::size_t b : X)
      if (a < b && space.d(a, b) > max_within) {
        max_within = space.d(a, b);
        wa = a;
        wb = b;
      }
  for (std::size_t x : X)
    for (std::size_t z : Z)
      if (!(max_within < space.d(x, z))) {
        std::ostringstream os;
        os << "separation violated: d(" << space.labels[x] << ", " << space.labels[z]
           << ") = " << space.d(x, z) << " does not exceed the within-group distance d("
           << space.labels[wa] << ", " << space.labels[wb] << ") = " << max_within;
        throw std::invalid_argument(os.str());
      }

  double pZ = 0.0;
  for (std::size_t z : Z) pZ += space.p[z];
  if (!(pZ < 1.0)) throw std::invalid_argument("outlier set must not carry all of the mass");
  const double bound = pZ / (1.0 - pZ);

  const TripletComparisonSpace T = induced_triplet(space, policy);
  const CohesionMatrix C = cohesion_matrix(T);
  const TripletComparisonSpace sub = subspace(T, X);
  const CohesionMatrix CX = cohesion_matrix(sub);

  CheckResult result{"outlier-bounds"};
  for (std::size_t xi = 0; xi < X.size(); ++xi) {
    const std::size_t x = X[xi];
    for (std::size_t z : Z) {
      std::ostringstream os;
      os << "cohesion of outlier " << space.labels[z] << " to " << space.labels[x] << " is "
         << C.values(x, z) << ", above the bound " << bound;
      result.record(std::max(0.0, C.values(x, z) - bound), tol, os.str());
    }
    for (std::size_t wi = 0; wi < X.size(); ++wi) {
      const std::size_t w = X[wi];
      const double diff = C.values(x, w) - CX.values(xi, wi);
      std::ostringstream low, high;
      low << "cohesion shift at " << triple_name(space.labels, x, w) << " is " << diff
          << ", below the outlier mass " << pZ;
      high << "cohesion shift at " << triple_name(space.labels, x, w) << " is " << diff
           << ", above the bound " << bound;
      result.record(std::max(0.0, pZ - diff), tol, low.str());
      result.record(std::max(0.0, diff - bound), tol, high.str());
    }
  }
  return result;
}

namespace {

std::vector<std::size_t> block_index_of(const PointLikePartition& partition, std::size_t n) {
  std::vector<std::size_t> block_of(n);
  for (std::size_t b = 0; b < partition.blocks.size(); ++b)
    for (std::size_t idx : partition.blocks[b]) block_of[idx] = b;
  return block_of;
}

}  // namespace

CheckResult check_local_mass_quotient(const TripletComparisonSpace& T,
                                      const PointLikePartition& partition,
                                      std::optional<std::vector<std::size_t>> reps, double tol) {
  const std::size_t n = T.size();
  const QuotientSpace q = quotient(T, partition, std::move(reps));
  const std::vector<std::size_t> block_of = block_index_of(partition, n);

  CheckResult result{"local-mass-quotient-consistency"};

  for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
    const auto& block = partition.blocks[b];
    double mass = 0.0;
    for (std::size_t idx : block) mass += T.masses()[idx];
    if (!(mass > 0.0)) continue;  // renormalized subspace undefined
    const TripletComparisonSpace sub = subspace(T, block);
    for (std::size_t ai = 0; ai < block.size(); ++ai)
      for (std::size_t bi = ai; bi < block.size(); ++bi) {
        const double lhs = local_mass(T, block[ai], block[bi]);
        const double rhs = mass * local_mass(sub, ai, bi);
        std::ostringstream os;
        os << "within-block local mass at " << triple_name(T.labels(), block[ai], block[bi])
           << " is " << lhs << ", expected m(block) * U_block = " << rhs;
        result.record(std::abs(lhs - rhs), tol, os.str());
      }
  }

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      if (block_of[x] == block_of[y]) continue;
      const double lhs = local_mass(T, x, y);
      const double rhs = local_mass(q.space, block_of[x], block_of[y]);
      std::ostringstream os;
      os << "cross-block local mass at " << triple_name(T.labels(), x, y) << " is " << lhs
         << ", expected the quotient value " << rhs;
      result.record(std::abs(lhs - rhs), tol, os.str());
    }
  return result;
}

CheckResult check_quotient_fractal(const TripletComparisonSpace& T,
                                   const PointLikePartition& partition,
                                   std::optional<std::vector<std::size_t>> reps, double tol) {
  const std::size_t n = T.size();
  const QuotientSpace q = quotient(T, partition, std::move(reps));
  const std::vector<std::size_t> block_of = block_index_of(partition, n);
  const CohesionMatrix C = cohesion_matrix(T);
  const CohesionMatrix Cq = cohesion_matrix(q.space);

  CheckResult result{"quotient-cohesion-consistency"};

  std::vector<double> block_mass(partition.blocks.size(), 0.0);
  for (std::size_t b = 0; b < partition.blocks.size(); ++b)
    for (std::size_t idx : partition.blocks[b]) block_mass[b] += T.masses()[idx];

  // within blocks: the block's own cohesion shifted by the quotient diagonal
  for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
    if (!(block_mass[b] > 0.0)) continue;
    const auto& block = partition.blocks[b];
    const CohesionMatrix Cb = cohesion_matrix(subspace(T, block));
    for (std::size_t ai = 0; ai < block.size(); ++ai)
      for (std::size_t bi = 0; bi < block.size(); ++bi) {
        const double expected = Cq.values(b, b) + (Cb.values(ai, bi) - 0.5);
        std::ostringstream os;
        os << "within-block cohesion at " << triple_name(T.labels(), block[ai], block[bi])
           << " is " << C.values(block[ai], block[bi]) << ", expected " << expected;
        result.record(std::abs(C.values(block[ai], block[bi]) - expected), tol, os.str());
      }
  }

  // across blocks: constant and equal to the quotient value
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t w = 0; w < n; ++w) {
      if (block_of[x] == block_of[w]) continue;
      const double expected = Cq.values(block_of[x], block_of[w]);
      std::ostringstream os;
      os << "cross-block cohesion at " << triple_name(T.labels(), x, w) << " is "
         << C.values(x, w) << ", expected the quotient value " << expected;
      result.record(std::abs(C.values(x, w) - expected), tol, os.str());
    }

  // block-aggregated cohesion equals the quotient weighted by block masses
  for (std::size_t i = 0; i < partition.blocks.size(); ++i)
    for (std::size_t j = 0; j < partition.blocks.size(); ++j) {
      double acc = 0.0;
      for (std::size_t x : partition.blocks[i])
        for (std::size_t w : partition.blocks[j])
          acc += C.values(x, w) * T.masses()[x] * T.masses()[w];
      const double expected = Cq.values(i, j) * block_mass[i] * block_mass[j];
      std::ostringstream os;
      os << "aggregated cohesion of blocks (" << i << ", " << j << ") is " << acc
         << ", expected " << expected;
      result.record(std::abs(acc - expected), tol, os.str());
    }
  return result;
}

CheckResult check_ordering_example() {
  CheckResult result{"ordering-reversal-fixture"};
  constexpr double tol = 1e-12;
  std::vector<double> grid;
  for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
  grid.push_back(1.0 / 3.0);

  for (double pv : grid) {
    const DissimilaritySpace space = generate(GeneratorSpec{OrderingExample{pv}});
    const CohesionMatrix C = cohesion_matrix(induced_triplet(space));
    std::ostringstream near, far;
    near << "p = " << pv << ": cohesion of the nearer point is " << C.values(0, 1)
         << ", expected 1/3";
    far << "p = " << pv << ": cohesion of the farther point is " << C.values(0, 2)
        << ", expected p";
    result.record(std::abs(C.values(0, 1) - 1.0 / 3.0), tol, near.str());
    result.record(std::abs(C.values(0, 2) - pv), tol, far.str());
    if (std::abs(pv - 1.0 / 3.0) > 1e-9) {
      const bool reversed = C.values(0, 1) < C.values(0, 2);
      if (reversed != (pv > 1.0 / 3.0)) {
        std::ostringstream os;
        os << "p = " << pv << ": order reversal is " << (reversed ? "present" : "absent")
           << ", expected the opposite";
        result.record(1.0, 0.0, os.str());
      }
    }
  }
  return result;
}

namespace {

CheckResult axiom_check(const TripletComparisonSpace& T, std::size_t sample_size) {
  CheckResult result{"triplet-axioms"};
  std::vector<std::array<std::size_t, 3>> sample;
  if (!T.dense() && T.size() > 64) sample = sample_triples(T.size(), sample_size, 0x5eed);
  const AxiomReport report = validate_axioms(T, sample);
  for (const AxiomViolation& v : report.violations) {
    std::ostringstream os;
    os << "axiom " << v.axiom << " violated at (" << T.labels()[v.i] << ", " << T.labels()[v.j]
       << ", " << T.labels()[v.k] << "), residual " << v.residual;
    result.record(v.residual, 0.0, os.str());
  }
  return result;
}

CheckResult dominance_check(const TripletComparisonSpace& T, const CohesionMatrix& C) {
  CheckResult result{"self-cohesion-dominance"};
  const std::size_t n = T.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t w = 0; w < n; ++w) {
      if (w == x || T.masses()[w] == 0.0) continue;
      if (!(C.values(x, x) > C.values(x, w))) {
        std::ostringstream os;
        os << "self-cohesion of " << T.labels()[x] << " (" << C.values(x, x)
           << ") does not exceed the cohesion of " << T.labels()[w] << " (" << C.values(x, w)
           << ")";
        result.record(std::max(0.0, C.values(x, w) - C.values(x, x)) +
                          std::numeric_limits<double>::epsilon(),
                      0.0, os.str());
      }
    }
  return result;
}

CheckResult local_mass_bounds_check(const TripletComparisonSpace& T) {
  CheckResult result{"local-mass-bounds"};
  const std::size_t n = T.size();
  const std::vector<double>& p = T.masses();
  for (std::size_t x = 0; x < n; ++x) {
    const double self = local_mass(T, x, x);
    std::ostringstream os;
    os << "diagonal local mass of " << T.labels()[x] << " is " << self << ", expected 2/3 p";
    result.record(std::abs(self - 2.0 * p[x] / 3.0), 1e-12, os.str());
    for (std::size_t y = x + 1; y < n; ++y) {
      const double u = local_mass(T, x, y);
      std::ostringstream lo;
      lo << "local mass at " << triple_name(T.labels(), x, y) << " is " << u
         << ", below p_x + p_y = " << p[x] + p[y];
      result.record(std::max(0.0, p[x] + p[y] - u), 1e-12, lo.str());
    }
  }
  return result;
}

CheckResult oracle_check(const TripletComparisonSpace& T, const CohesionMatrix& C) {
  CheckResult result{"kernel-matches-definition"};
  const CohesionMatrix reference = brute_force_cohesion(T);
  double max_diff = 0.0;
  for (std::size_t i = 0; i < C.values.data.size(); ++i)
    max_diff = std::max(max_diff, std::abs(C.values.data[i] - reference.values.data[i]));
  std::ostringstream os;
  os << "kernel deviates from the literal evaluation by " << max_diff;
  result.record(max_diff, 1e-12, os.str());
  return result;
}

CheckResult monotone_invariance_check(const TripletComparisonSpace& T) {
  CheckResult result{"order-invariance-under-monotone-rescale"};
  const DissimilaritySpace& base = *T.source();
  const std::size_t n = base.size();

  const auto transformed = [&](auto&& f) {
    DissimilaritySpace out;
    out.labels = base.labels;
    out.p = base.p;
    out.d = Mat(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out.d(i, j) = f(base.d(i, j));
    return induced_triplet(std::move(out), T.tie_policy());
  };

  try {
    const TripletComparisonSpace cubed = transformed([](double v) { return v * v * v; });
    const TripletComparisonSpace shifted = transformed([](double v) { return v + 1.0; });
    const auto compare = [&](const TripletComparisonSpace& other, const char* what) {
      if (n <= 64) {
        const auto a = T.densify();
        const auto b = other.densify();
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
              const double diff = std::abs(a.at(i, j, k) - b.at(i, j, k));
              if (diff > 0.0)
                result.record(diff, 0.0,
                              std::string("comparison changed under ") + what + " at (" +
                                  T.labels()[i] + ", " + T.labels()[j] + "; " + T.labels()[k] +
                                  ")");
            }
      } else {
        for (const auto& [a, b, c] : sample_triples(n, 20000, 0xfeed)) {
          const double diff = std::abs(T.at(a, b, c) - other.at(a, b, c));
          if (diff > 0.0)
            result.record(diff, 0.0,
                          std::string("comparison changed under ") + what + " at (" +
                              T.labels()[a] + ", " + T.labels()[b] + "; " + T.labels()[c] + ")");
        }
      }
    };
    compare(cubed, "cubing");
    compare(shifted, "unit shift");
  } catch (const std::exception& e) {
    result.record(1.0, 0.0, std::string("transformed space rejected: ") + e.what());
  }
  return result;
}

CheckResult chain_maximum_check() {
  CheckResult result{"chain-maximum-values"};
  constexpr double tol = 1e-10;
  for (std::size_t n = 3; n <= 10; ++n) {
    const DissimilaritySpace space = generate(GeneratorSpec{GeometricChain{n, 0.1}});
    const CohesionMatrix C = cohesion_matrix(induced_triplet(space));
    double harmonic_tail = 0.0;
    for (std::size_t k = 3; k <= n; ++k) harmonic_tail += 1.0 / static_cast<double>(k);
    std::ostringstream off, diag;
    off << "n = " << n << ": cohesion of the neighbor to the end point is "
        << C.values(n - 1, n - 2) << ", expected " << harmonic_tail;
    diag << "n = " << n << ": end point self-cohesion is " << C.values(n - 1, n - 1)
         << ", expected " << 1.0 + harmonic_tail;
    result.record(std::abs(C.values(n - 1, n - 2) - harmonic_tail), tol, off.str());
    result.record(std::abs(C.values(n - 1, n - 1) - (1.0 + harmonic_tail)), tol, diag.str());
  }
  return result;
}

CheckResult representative_independence_check(const TripletComparisonSpace& T,
                                              const PointLikePartition& partition) {
  CheckResult result{"representative-independence"};
  std::vector<std::size_t> first_reps, last_reps;
  for (const auto& block : partition.blocks) {
    first_reps.push_back(*std::min_element(block.begin(), block.end()));
    last_reps.push_back(*std::max_element(block.begin(), block.end()));
  }
  const auto qa = quotient(T, partition, first_reps).space.densify();
  const auto qb = quotient(T, partition, last_reps).space.densify();
  const std::size_t N = partition.blocks.size();
  const double tol = T.induced() ? 0.0 : 1e-12;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k) {
        const double diff = std::abs(qa.at(i, j, k) - qb.at(i, j, k));
        std::ostringstream os;
        os << "quotient entry ({" << i << "," << j << "}, " << k
           << ") depends on the representative choice, difference " << diff;
        result.record(diff, tol, os.str());
      }
  return result;
}

CheckResult x_transform_invariance_check(const TripletComparisonSpace& T,
                                         const PointLikePartition& partition) {
  CheckResult result{"rescale-invariance"};
  const DissimilaritySpace& base = *T.source();
  XTransformation t;
  t.partition = partition;
  for (std::size_t b = 0; b < partition.blocks.size(); ++b)
    t.alphas.push_back(0.35 + 0.1 * static_cast<double>(b % 6));
  t.beta = 1.75;
  const DissimilaritySpace transformed = apply_x_transformation(base, t);
  const CohesionMatrix before = cohesion_matrix(T);
  const CohesionMatrix after = cohesion_matrix(induced_triplet(transformed, T.tie_policy()));
  double max_diff = 0.0;
  for (std::size_t i = 0; i < before.values.data.size(); ++i)
    max_diff = std::max(max_diff, std::abs(before.values.data[i] - after.values.data[i]));
  std::ostringstream os;
  os << "cohesion changed by " << max_diff << " under a block rescaling";
  result.record(max_diff, 0.0, os.str());
  return result;
}

// Top-level blocks of the containment forest: the children of the full set.
PointLikePartition top_partition(const PointLikeFamily& family) {
  std::ptrdiff_t root = -1;
  for (std::size_t i = 0; i < family.sets.size(); ++i)
    if (family.parent[i] < 0) root = static_cast<std::ptrdiff_t>(i);
  PointLikePartition part;
  for (std::size_t i = 0; i < family.sets.size(); ++i)
    if (family.parent[i] == root) part.blocks.push_back(family.sets[i]);
  if (part.blocks.empty() && root >= 0)
    part.blocks.push_back(family.sets[static_cast<std::size_t>(root)]);
  std::sort(part.blocks.begin(), part.blocks.end());
  return part;
}

}  // namespace

std::vector<CheckResult> run_standard_checks(const TripletComparisonSpace& T,
                                             const VerifyOptions& options) {
  std::vector<CheckResult> results;
  results.push_back(axiom_check(T, options.axiom_sample));

  const CohesionMatrix C = cohesion_matrix(T, options.threads);
  results.push_back(check_average_half(C, T.masses()));
  results.push_back(dominance_check(T, C));
  results.push_back(local_mass_bounds_check(T));
  if (T.size() <= options.oracle_cap) results.push_back(oracle_check(T, C));
  if (T.induced()) results.push_back(monotone_invariance_check(T));

  results.push_back(check_ordering_example());
  results.push_back(chain_maximum_check());

  const bool can_enumerate =
      (T.induced() && T.size() <= options.enumerate_cap) || (!T.induced() && T.size() <= 16);
  if (can_enumerate) {
    const PointLikeFamily family = enumerate_point_like(T);
    const PointLikePartition part = top_partition(family);
    results.push_back(check_local_mass_quotient(T, part));
    results.push_back(check_quotient_fractal(T, part));
    results.push_back(representative_independence_check(T, part));
    if (T.induced() && part.blocks.size() > 1)
      results.push_back(x_transform_invariance_check(T, part));
  }
  return results;
}

std::vector<CheckResult> run_standard_checks(const DissimilaritySpace& space, TiePolicy policy,
                                             const VerifyOptions& options,
                                             const std::vector<std::size_t>& outliers) {
  const TripletComparisonSpace T = induced_triplet(space, policy);
  std::vector<CheckResult> results = run_standard_checks(T, options);

  if (!outliers.empty()) results.push_back(check_outlier_bounds(space, outliers, policy));

  // Any point that is mutually outlying with everything obeys the exact
  // mass-shift law; check each such point.
  for (std::size_t z = 0; z < space.size() && space.size() >= 2; ++z) {
    bool fully = true;
    for (std::size_t x = 0; x < space.size() && fully; ++x)
      if (x != z && !mutually_outlying(space, x, z)) fully = false;
    if (fully) {
      CheckResult r = check_outlier_influence(space, z, policy);
      r.name += " (" + space.labels[z] + ")";
      results.push_back(std::move(r));
    }
  }
  return results;
}

}  // namespace cohesion
