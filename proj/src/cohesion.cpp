#include "cohesion/cohesion.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace cohesion {

double local_mass(const TripletComparisonSpace& T, std::size_t x, std::size_t y) {
  const std::size_t n = T.size();
  const std::vector<double>& p = T.masses();
  double u = 0.0;
  for (std::size_t z = 0; z < n; ++z) u += (T.at(x, z, y) + T.at(y, z, x)) * p[z];
  return u;
}

Mat local_mass_matrix(const TripletComparisonSpace& T) {
  const std::size_t n = T.size();
  Mat u(n, n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y) {
      const double v = local_mass(T, x, y);
      u(x, y) = v;
      u(y, x) = v;
    }
  return u;
}

namespace {

// One focal row of the cohesion matrix.  The local mass of (x, y) is formed
// once per opposing point y and reused for every w, so a row costs O(n^2)
// time and O(1) extra space.
template <class EntryFn>
void cohesion_rows(std::size_t n, const std::vector<double>& p, const EntryFn& entry, Mat& out,
                   std::size_t row_begin, std::size_t row_end) {
  for (std::size_t x = row_begin; x < row_end; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const double py = p[y];
      if (py == 0.0) continue;  // zero-mass opposing points contribute nothing
      double u = 0.0;
      for (std::size_t z = 0; z < n; ++z) u += (entry(x, z, y) + entry(y, z, x)) * p[z];
      if (!(u > 0.0))
        throw std::logic_error(
            "local mass vanished for a pair with positive opposing mass; "
            "the comparison function violates the degenerate-entry axioms");
      const double scale = py / u;
      for (std::size_t w = 0; w < n; ++w) out(x, w) += entry(x, w, y) * scale;
    }
  }
}

template <class EntryFn>
Mat run_kernel(std::size_t n, const std::vector<double>& p, const EntryFn& entry,
               unsigned threads) {
  Mat out(n, n, 0.0);
  unsigned want = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  want = static_cast<unsigned>(std::min<std::size_t>(want, n));
  if (want <= 1 || n < 64) {
    cohesion_rows(n, p, entry, out, 0, n);
    return out;
  }

  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  const std::size_t chunk = (n + want - 1) / want;
  for (unsigned t = 0; t < want; ++t) {
    const std::size_t begin = std::min<std::size_t>(t * chunk, n);
    const std::size_t end = std::min<std::size_t>(begin + chunk, n);
    if (begin == end) break;
    pool.emplace_back([&, begin, end] {
      try {
        cohesion_rows(n, p, entry, out, begin, end);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace

CohesionMatrix cohesion_matrix(const TripletComparisonSpace& T, unsigned threads) {
  const std::size_t n = T.size();
  const std::vector<double>& p = T.masses();
  Mat values;
  if (T.induced()) {
    const DissimilaritySpace& s = *T.source();
    const double eps = T.tie_policy().epsilon;
    const Mat& d = s.d;
    const auto entry = [&d, eps](std::size_t i, std::size_t j, std::size_t k) {
      if (i == j) return k == i ? 1.0 / 3.0 : 1.0;
      if (k == i || k == j) return 0.0;
      return induced_share(d(i, j), d(i, k), d(j, k), eps);
    };
    values = run_kernel(n, p, entry, threads);
  } else {
    values = run_kernel(
        n, p,
        [&T](std::size_t i, std::size_t j, std::size_t k) { return T.at(i, j, k); }, threads);
  }
  return CohesionMatrix{T.labels(), std::move(values)};
}

Mat legacy_cohesion(const DissimilaritySpace& space) {
  const std::size_t n = space.size();
  if (n < 2) throw std::invalid_argument("the unweighted cohesion needs at least two points");
  for (double pi : space.p)
    if (std::abs(pi - 1.0 / static_cast<double>(n)) > 1e-12)
      throw std::invalid_argument("the unweighted cohesion is defined for uniform masses only");
  // Runs the strict tie scan as a side effect.
  induced_triplet(space, TiePolicy{TieMode::Strict, 0.0});

  const Mat& d = space.d;
  Mat C(n, n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      const double dxy = d(x, y);
      std::size_t local_size = 0;
      for (std::size_t z = 0; z < n; ++z)
        if (std::min(d(x, z), d(y, z)) < dxy) ++local_size;
      const double vote = 1.0 / static_cast<double>(local_size);
      for (std::size_t w = 0; w < n; ++w)
        if (d(w, x) < d(w, y) && std::min(d(x, w), d(y, w)) < dxy) C(x, w) += vote;
    }
  }
  const double norm = 1.0 / static_cast<double>(n - 1);
  for (double& v : C.data) v *= norm;
  return C;
}

LocalDepthVector local_depth(const CohesionMatrix& C, const std::vector<double>& p) {
  const std::size_t n = C.labels.size();
  validate_masses(p, n);
  LocalDepthVector depth;
  depth.labels = C.labels;
  depth.generalized.resize(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    double sum = 0.0;
    for (std::size_t w = 0; w < n; ++w) sum += C.values(x, w) * p[w];
    depth.generalized[x] = sum;
  }
  return depth;
}

LocalDepthVector local_depth(const CohesionMatrix& C, const std::vector<double>& p,
                             const Mat& legacy) {
  LocalDepthVector depth = local_depth(C, p);
  if (legacy.rows != C.labels.size() || legacy.cols != C.labels.size())
    throw std::invalid_argument("legacy cohesion matrix has the wrong shape");
  depth.legacy.resize(legacy.rows, 0.0);
  for (std::size_t x = 0; x < legacy.rows; ++x) {
    double sum = 0.0;
    for (std::size_t w = 0; w < legacy.cols; ++w) sum += legacy(x, w);
    depth.legacy[x] = sum;
  }
  return depth;
}

namespace {

struct DisjointSet {
  std::vector<std::size_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

CommunityGraph community_graph(const CohesionMatrix& C, const std::vector<double>& p,
                               std::optional<double> threshold) {
  const std::size_t n = C.labels.size();
  validate_masses(p, n);
  CommunityGraph g;
  g.labels = C.labels;

  if (threshold) {
    g.threshold = *threshold;
  } else {
    double self = 0.0;
    for (std::size_t x = 0; x < n; ++x) self += C.values(x, x) * p[x];
    g.threshold = 0.5 * self;
  }

  DisjointSet components(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double weight = std::min(C.values(a, b), C.values(b, a));
      if (weight <= 0.0) continue;
      const bool strong = weight >= g.threshold;
      g.edges.push_back({a, b, weight, strong});
      if (strong) components.unite(a, b);
    }
  }

  std::vector<std::ptrdiff_t> community_of(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = components.find(i);
    if (community_of[root] < 0) {
      community_of[root] = static_cast<std::ptrdiff_t>(g.communities.size());
      g.communities.emplace_back();
    }
    g.communities[static_cast<std::size_t>(community_of[root])].push_back(i);
  }
  return g;
}

double weighted_mean_cohesion(const CohesionMatrix& C, const std::vector<double>& p) {
  const std::size_t n = C.labels.size();
  long double sum = 0.0L;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t w = 0; w < n; ++w)
      sum += static_cast<long double>(C.values(x, w)) * p[x] * p[w];
  return static_cast<double>(sum);
}

}  // namespace cohesion
