#include "cohesion/triplet_space.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cohesion {

namespace {

constexpr double kAxiomTol = 1e-12;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// Sorted pair of row entries that violate the strict (no ties) policy, if any.
void reject_row_ties(const DissimilaritySpace& s, double epsilon) {
  const std::size_t n = s.size();
  std::vector<std::pair<double, std::size_t>> row;
  for (std::size_t x = 0; x < n; ++x) {
    row.clear();
    for (std::size_t y = 0; y < n; ++y)
      if (y != x) row.emplace_back(s.d(x, y), y);
    std::sort(row.begin(), row.end());
    for (std::size_t i = 0; i + 1 < row.size(); ++i) {
      if (row[i + 1].first - row[i].first <= epsilon) {
        std::ostringstream os;
        os << "tied comparison under the strict policy: d(" << s.labels[x] << ", "
           << s.labels[row[i].second] << ") = " << row[i].first << " equals d(" << s.labels[x]
           << ", " << s.labels[row[i + 1].second] << ") = " << row[i + 1].first;
        fail(os.str());
      }
    }
  }
}

}  // namespace

std::size_t TripletComparisonSpace::dense_index(std::size_t n, std::size_t i, std::size_t j,
                                                std::size_t k) {
  const std::size_t a = std::min(i, j);
  const std::size_t b = std::max(i, j);
  const std::size_t pair = a * n - a * (a - 1) / 2 + (b - a);
  return pair * n + k;
}

double TripletComparisonSpace::at(std::size_t i, std::size_t j, std::size_t k) const {
  if (dense_) return (*dense_)[dense_index(size(), i, j, k)];
  // Degenerate entries are forced by the axioms; only genuine triples of
  // distinct points consult the dissimilarities.
  if (i == j) return k == i ? 1.0 / 3.0 : 1.0;
  if (k == i || k == j) return 0.0;
  const Mat& d = source_->d;
  return induced_share(d(i, j), d(i, k), d(j, k), policy_.epsilon);
}

TripletComparisonSpace TripletComparisonSpace::densify() const {
  if (dense_) return *this;
  const std::size_t n = size();
  std::vector<double> tensor(n * (n + 1) / 2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) tensor[dense_index(n, i, j, k)] = at(i, j, k);
  return from_dense(labels_, p_, std::move(tensor));
}

TripletComparisonSpace TripletComparisonSpace::from_dissimilarity(DissimilaritySpace space,
                                                                  TiePolicy policy) {
  TripletComparisonSpace t;
  t.labels_ = space.labels;
  t.p_ = space.p;
  t.policy_ = policy;
  t.source_ = std::make_shared<const DissimilaritySpace>(std::move(space));
  return t;
}

TripletComparisonSpace TripletComparisonSpace::from_dense(std::vector<std::string> labels,
                                                          std::vector<double> p,
                                                          std::vector<double> tensor) {
  const std::size_t n = labels.size();
  if (tensor.size() != n * (n + 1) / 2 * n) fail("dense tensor has the wrong element count");
  validate_masses(p, n);
  TripletComparisonSpace t;
  t.labels_ = std::move(labels);
  t.p_ = std::move(p);
  t.dense_ = std::make_shared<const std::vector<double>>(std::move(tensor));
  return t;
}

TripletComparisonSpace induced_triplet(DissimilaritySpace space, TiePolicy policy) {
  space.validate();
  if (policy.epsilon < 0.0) fail("tie epsilon must be non-negative");
  if (policy.mode == TieMode::Strict) reject_row_ties(space, policy.epsilon);
  return TripletComparisonSpace::from_dissimilarity(std::move(space), policy);
}

namespace {

// Dense tensor with every degenerate entry at its forced value and all
// genuine triples at 1/3; builders overwrite the triples they know about.
std::vector<double> neutral_tensor(std::size_t n) {
  std::vector<double> tensor(n * (n + 1) / 2 * n, 1.0 / 3.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) tensor[TripletComparisonSpace::dense_index(n, i, i, k)] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      tensor[TripletComparisonSpace::dense_index(n, i, j, i)] = 0.0;
      tensor[TripletComparisonSpace::dense_index(n, i, j, j)] = 0.0;
    }
  }
  return tensor;
}

}  // namespace

TripletComparisonSpace aggregate_outlier_responses(std::vector<std::string> labels,
                                                   std::vector<double> p,
                                                   const std::vector<OutlierResponse>& responses) {
  const std::size_t n = labels.size();
  if (n == 0) fail("empty label set");
  if (p.empty()) p = uniform_masses(n);
  validate_masses(p, n);

  // counts per sorted triple, slot = which member is the outlier
  std::map<std::array<std::size_t, 3>, std::array<double, 3>> counts;
  for (const OutlierResponse& r : responses) {
    if (r.i >= n || r.j >= n || r.k >= n) fail("response references an unknown point index");
    if (r.i == r.j || r.i == r.k || r.j == r.k)
      fail("response must name three distinct points");
    if (!(r.count >= 0.0)) fail("response count is negative or NaN");
    std::array<std::size_t, 3> key{r.i, r.j, r.k};
    std::sort(key.begin(), key.end());
    auto& slot = counts.try_emplace(key, std::array<double, 3>{0, 0, 0}).first->second;
    for (int m = 0; m < 3; ++m)
      if (key[m] == r.k) slot[m] += r.count;
  }

  std::vector<double> tensor = neutral_tensor(n);
  for (const auto& [key, slot] : counts) {
    const double total = slot[0] + slot[1] + slot[2];
    if (total <= 0.0) continue;  // no effective responses: keep the 1/3 default
    const auto [a, b, c] = key;
    tensor[TripletComparisonSpace::dense_index(n, b, c, a)] = slot[0] / total;
    tensor[TripletComparisonSpace::dense_index(n, a, c, b)] = slot[1] / total;
    tensor[TripletComparisonSpace::dense_index(n, a, b, c)] = slot[2] / total;
  }
  return TripletComparisonSpace::from_dense(std::move(labels), std::move(p), std::move(tensor));
}

void StandardQueryMarginals::set(std::size_t x, std::size_t y, std::size_t z, double weight) {
  if (x == y || x == z || y == z) fail("marginal must reference three distinct points");
  if (!(weight >= 0.0 && weight <= 1.0)) fail("marginal weight outside [0, 1]");
  const std::array<std::size_t, 3> key{x, y, z};
  const std::array<std::size_t, 3> complement{x, z, y};
  if (auto it = values_.find(complement); it != values_.end()) {
    if (std::abs(it->second + weight - 1.0) > 1e-9) {
      std::ostringstream os;
      os << "inconsistent complement pair: weight(" << x << "," << y << "," << z << ") = "
         << weight << " but weight(" << x << "," << z << "," << y << ") = " << it->second;
      fail(os.str());
    }
  }
  if (auto it = values_.find(key); it != values_.end() && std::abs(it->second - weight) > 1e-9)
    fail("conflicting duplicate marginal");
  values_[key] = weight;
}

double StandardQueryMarginals::get(std::size_t x, std::size_t y, std::size_t z) const {
  if (auto it = values_.find({x, y, z}); it != values_.end()) return it->second;
  if (auto it = values_.find({x, z, y}); it != values_.end()) return 1.0 - it->second;
  return 0.5;
}

TripletComparisonSpace aggregate_standard_queries(std::vector<std::string> labels,
                                                  std::vector<double> p,
                                                  const StandardQueryMarginals& marginals) {
  const std::size_t n = labels.size();
  if (n == 0) fail("empty label set");
  if (p.empty()) p = uniform_masses(n);
  validate_masses(p, n);
  for (const auto& [key, weight] : marginals.raw())
    if (key[0] >= n || key[1] >= n || key[2] >= n)
      fail("marginal references an unknown point index");

  // Outlier weight of a pair: both ends rank each other above the outlier;
  // each of the two circular (disconcordant) rankings contributes 1/3.
  const auto share = [&](std::size_t x, std::size_t y, std::size_t z) {
    const double xy = marginals.get(x, y, z), yx = marginals.get(y, x, z);
    const double yz = marginals.get(y, z, x), zx = marginals.get(z, x, y);
    const double xz = marginals.get(x, z, y), zy = marginals.get(z, y, x);
    return xy * yx + (xy * yz * zx + xz * yx * zy) / 3.0;
  };

  std::vector<double> tensor = neutral_tensor(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        tensor[TripletComparisonSpace::dense_index(n, a, b, c)] = share(a, b, c);
        tensor[TripletComparisonSpace::dense_index(n, a, c, b)] = share(a, c, b);
        tensor[TripletComparisonSpace::dense_index(n, b, c, a)] = share(b, c, a);
      }
  return TripletComparisonSpace::from_dense(std::move(labels), std::move(p), std::move(tensor));
}

namespace {

void check_degenerates(const TripletComparisonSpace& T, AxiomReport& report) {
  const std::size_t n = T.size();
  const auto note = [&](std::size_t i, std::size_t j, std::size_t k, double residual) {
    if (residual > kAxiomTol) report.violations.push_back({i, j, k, 1, residual});
  };
  for (std::size_t i = 0; i < n; ++i) {
    note(i, i, i, std::abs(T.at(i, i, i) - 1.0 / 3.0));
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      note(i, i, j, std::abs(T.at(i, i, j) - 1.0));
      note(i, j, i, std::abs(T.at(i, j, i)));
    }
  }
}

void check_triple(const TripletComparisonSpace& T, std::size_t a, std::size_t b, std::size_t c,
                  AxiomReport& report) {
  const double tab = T.at(a, b, c), tac = T.at(a, c, b), tbc = T.at(b, c, a);
  const double sum_residual = std::abs(tab + tac + tbc - 1.0);
  if (sum_residual > kAxiomTol) report.violations.push_back({a, b, c, 3, sum_residual});
  for (double v : {tab, tac, tbc}) {
    const double range_residual = std::max(-v, v - 1.0);
    if (range_residual > kAxiomTol) {
      report.violations.push_back({a, b, c, 4, range_residual});
      break;
    }
  }
}

}  // namespace

AxiomReport validate_axioms(const TripletComparisonSpace& T,
                            std::span<const std::array<std::size_t, 3>> sample) {
  const std::size_t n = T.size();
  AxiomReport report;
  check_degenerates(T, report);
  if (T.dense() || (sample.empty() && n <= 64)) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) check_triple(T, a, b, c, report);
  } else {
    std::vector<std::array<std::size_t, 3>> fallback;
    if (sample.empty()) {
      fallback = sample_triples(n, 20000, 0x5eed);
      sample = fallback;
    }
    for (const auto& [a, b, c] : sample) check_triple(T, a, b, c, report);
  }
  report.passed = report.violations.empty();
  return report;
}

std::vector<std::array<std::size_t, 3>> sample_triples(std::size_t n, std::size_t count,
                                                       std::uint64_t seed) {
  std::vector<std::array<std::size_t, 3>> out;
  if (n < 3) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  out.reserve(count);
  while (out.size() < count) {
    const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
    if (a != b && a != c && b != c) out.push_back({a, b, c});
  }
  return out;
}

}  // namespace cohesion
