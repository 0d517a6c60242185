#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wocce/base_clustering.hpp"
#include "wocce/error.hpp"

using namespace wocce;

namespace {

Dataset from(const Matrix& x) {
  Dataset ds;
  ds.name = "test";
  ds.features = x;
  return ds;
}

// Two isotropic blobs of 20 points, sigma 1, centers 10 sigma apart.
Dataset blobs(std::uint64_t seed, double sep = 10.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix x(40, 2);
  Labels y(40);
  for (Eigen::Index i = 0; i < 40; ++i) {
    int c = i < 20 ? 0 : 1;
    x(i, 0) = g(rng) + c * sep;
    x(i, 1) = g(rng);
    y[static_cast<std::size_t>(i)] = c;
  }
  auto ds = from(x);
  ds.labels = y;
  ds.k_true = 2;
  return ds;
}

double sse(const Matrix& x, const Labels& l, int k) {
  double s = 0.0;
  for (int c = 0; c < k; ++c) {
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
    int cnt = 0;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      if (l[static_cast<std::size_t>(i)] == c) mean += x.row(i), ++cnt;
    if (cnt == 0) return std::numeric_limits<double>::infinity();
    mean /= cnt;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      if (l[static_cast<std::size_t>(i)] == c) s += (x.row(i) - mean).squaredNorm();
  }
  return s;
}

}  // namespace

TEST_CASE("kmeans 1-D example reaches the exhaustive SSE optimum") {
  Matrix x(4, 1);
  x << 0, 0.1, 10, 10.1;
  Matrix start(2, 1);
  start << 0, 10;
  auto fit = kmeans_from_centers(x, start);
  CHECK(oracle::blocks(fit.labels) == oracle::blocks({0, 0, 1, 1}));
  double best = std::numeric_limits<double>::infinity();
  for (int mask = 0; mask < 16; ++mask) {
    Labels l(4);
    for (int i = 0; i < 4; ++i) l[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    best = std::min(best, sse(x, l, 2));
  }
  CHECK(sse(x, fit.labels, 2) == doctest::Approx(best).epsilon(1e-12));
  CHECK(fit.initial_centers == start);
}

TEST_CASE("kmeans basic_params are the k seed rows") {
  auto iris = load_csv(WOCCE_DATA_DIR "/iris.csv", true);
  auto p = kmeans(iris, 3, 42);
  CHECK(p.k == 3);
  REQUIRE(p.basic_params.rows() == 3);
  CHECK(p.basic_params.cols() == 4);
  for (Eigen::Index r = 0; r < 3; ++r) {
    bool found = false;
    for (Eigen::Index i = 0; i < 150; ++i) found |= iris.features.row(i) == p.basic_params.row(r);
    CHECK(found);
  }
  auto again = kmeans(iris, 3, 42);
  CHECK(again.labels == p.labels);
  CHECK(again.basic_params == p.basic_params);
}

TEST_CASE("k = 1 gives one cluster centred on the global mean") {
  auto ds = blobs(3);
  auto km = kmeans_from_centers(ds.features, sample_rows(ds.features, 1, 1));
  CHECK(km.centers.row(0).isApprox(ds.features.colwise().mean(), 1e-12));
  CHECK(std::all_of(km.labels.begin(), km.labels.end(), [](int l) { return l == 0; }));
  auto f = fuzzy_cmeans(ds, 1, 1);
  CHECK(f.k == 1);
  auto g = gmm_from_kmeans(ds.features, km);
  CHECK(g.means.row(0).isApprox(ds.features.colwise().mean(), 1e-9));
}

TEST_CASE("kmeans SSE never increases") {
  auto iris = load_csv(WOCCE_DATA_DIR "/iris.csv", true);
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto fit = kmeans_from_centers(iris.features, sample_rows(iris.features, 5, s));
    for (std::size_t i = 1; i < fit.sse.size(); ++i) CHECK(fit.sse[i] <= fit.sse[i - 1] + 1e-9);
  }
}

TEST_CASE("fcm agrees with kmeans on two tight far pairs") {
  Matrix x(4, 2);
  x << 0, 0, 0.1, 0, 20, 20, 20.1, 20;
  auto ds = from(x);
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto f = fuzzy_cmeans(ds, 2, s);
    auto k = kmeans(ds, 2, s);
    CHECK(oracle::blocks(f.labels) == oracle::blocks(k.labels));
    CHECK(oracle::blocks(f.labels) == oracle::blocks({0, 0, 1, 1}));
  }
}

TEST_CASE("fcm objective never increases") {
  auto iris = load_csv(WOCCE_DATA_DIR "/iris.csv", true);
  auto fit = fcm_from_centers(iris.features, sample_rows(iris.features, 3, 8));
  for (std::size_t i = 1; i < fit.objective.size(); ++i) CHECK(fit.objective[i] <= fit.objective[i - 1] + 1e-9);
  for (Eigen::Index i = 0; i < fit.memberships.rows(); ++i)
    CHECK(fit.memberships.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gmm recovers two separated blobs exactly") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto ds = blobs(100 + s);
    auto p = gmm_em(ds, 2, s);
    CHECK(oracle::accuracy(p.labels, *ds.labels) == 100.0);
    CHECK(p.basic_params.rows() == 2);
  }
}

TEST_CASE("gmm log-likelihood is non-decreasing") {
  auto iris = load_csv(WOCCE_DATA_DIR "/iris.csv", true);
  auto km = kmeans_from_centers(iris.features, sample_rows(iris.features, 3, 4));
  auto g = gmm_from_kmeans(iris.features, km);
  for (std::size_t i = 1; i < g.log_likelihood.size(); ++i)
    CHECK(g.log_likelihood[i] >= g.log_likelihood[i - 1] - 1e-8 * std::abs(g.log_likelihood[i - 1]));
  CHECK(g.weights.sum() == doctest::Approx(1.0));
}

TEST_CASE("subtractive finds both blob cores") {
  // Tight blobs at (0, 0) and (10, 10).
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g(0.0, 0.3);
  Matrix x(40, 2);
  Labels y(40);
  for (Eigen::Index i = 0; i < 40; ++i) {
    int c = i % 2;
    x(i, 0) = g(rng) + 10.0 * c;
    x(i, 1) = g(rng) + 10.0 * c;
    y[static_cast<std::size_t>(i)] = c;
  }
  auto ds = from(x);
  ds.labels = y;
  auto fit = subtractive_fit(x, 0.5);
  CHECK(fit.centers.rows() == 2);
  auto p = subtractive(ds, 0.5);
  CHECK(p.k == 2);
  CHECK(oracle::accuracy(p.labels, *ds.labels) == 100.0);
  CHECK(p.basic_params.size() == 0);
  CHECK_FALSE(p.descriptor.stochastic);
}

TEST_CASE("subtractive on a repeated point gives one center") {
  Matrix x = Matrix::Constant(5, 2, 3.0);
  auto p = subtractive(from(x), 0.5);
  CHECK(p.k == 1);
}

TEST_CASE("run_base contracts") {
  auto iris = load_csv(WOCCE_DATA_DIR "/iris.csv", true);
  auto single = AlgorithmDescriptor::hierarchical(Linkage::Single, Metric::Euclidean);
  auto p = run_base(single, iris, 150, 0);
  CHECK(p.k == 150);
  CHECK_THROWS_AS(run_base(AlgorithmDescriptor::kmeans(), iris, 151, 0), SizeError);
  CHECK_THROWS_AS(run_base(AlgorithmDescriptor::kmeans(), iris, 1, 0), SizeError);
  CHECK_THROWS_AS(run_base(AlgorithmDescriptor::consensus(), iris, 3, 0), ConfigError);
  // Subtractive ignores the requested count.
  CHECK(run_base(AlgorithmDescriptor::subtractive(0.5), iris, 9, 0).k ==
        run_base(AlgorithmDescriptor::subtractive(0.5), iris, 3, 0).k);
}

TEST_CASE("every roster entry returns contiguous nonempty clusters and repeats for equal seeds") {
  auto iris = load_csv(WOCCE_DATA_DIR "/iris.csv", true);
  BaseRunner runner(iris);
  for (const auto& d : default_roster()) {
    for (int k : {2, 3, 7}) {
      auto p = runner.run(d, k, 77);
      auto again = run_base(d, iris, k, 77);
      CHECK(p.labels == again.labels);
      auto sizes = p.cluster_sizes();
      CHECK(sizes.size() == static_cast<std::size_t>(p.k));
      for (auto s : sizes) CHECK(s > 0);
      if (d.family != Family::Subtractive) CHECK(p.k == k);
      CHECK(p.basic_params.size() == (d.stochastic ? static_cast<Eigen::Index>(k) * 4 : 0));
    }
  }
}
