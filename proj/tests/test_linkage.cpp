#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wocce/error.hpp"
#include "wocce/linkage.hpp"

using namespace wocce;

namespace {

Matrix col(std::initializer_list<double> v) {
  Matrix m(static_cast<Eigen::Index>(v.size()), 1);
  Eigen::Index i = 0;
  for (double x : v) m(i++, 0) = x;
  return m;
}

}  // namespace

TEST_CASE("pairwise distances per metric") {
  Matrix x(3, 2);
  x << 1, 2, 1, 5, 0, 0;
  auto e = pairwise_distances(x, Metric::Euclidean);
  CHECK(e(0, 1) == doctest::Approx(3.0));
  auto h = pairwise_distances(x, Metric::Hamming);
  CHECK(h(0, 1) == 0.5);
  CHECK(h(0, 2) == 1.0);
  auto c = pairwise_distances(x, Metric::Cosine);
  // Zero vector has similarity 0 with everything.
  CHECK(c(0, 2) == 1.0);
  CHECK(c(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c(0, 1) == doctest::Approx(1.0 - 11.0 / (std::sqrt(5.0) * std::sqrt(26.0))));
}

TEST_CASE("single linkage hand trace") {
  auto d = pairwise_distances(col({0, 1, 10}), Metric::Euclidean);
  auto dend = agglomerate(d, Linkage::Single);
  REQUIRE(dend.merges.size() == 2);
  CHECK(dend.merges[0].left == 0);
  CHECK(dend.merges[0].right == 1);
  CHECK(dend.merges[0].height == 1.0);
  CHECK(dend.merges[1].height == 9.0);
  CHECK(cut_dendrogram(dend, 2) == Labels{0, 0, 1});
  CHECK(cut_dendrogram(dend, 3) == Labels{0, 1, 2});
  CHECK(cut_dendrogram(dend, 1) == Labels{0, 0, 0});
  CHECK_THROWS_AS(cut_dendrogram(dend, 0), SizeError);
  CHECK_THROWS_AS(cut_dendrogram(dend, 4), SizeError);
}

TEST_CASE("complete and ward heights on a 1-D example") {
  auto d = pairwise_distances(col({0, 1, 10}), Metric::Euclidean);
  CHECK(agglomerate(d, Linkage::Complete).merges[1].height == 10.0);
  // Ward: merging {0,1} (centroid 0.5) with {10}: sqrt(2*1*2/3) * 9.5.
  CHECK(agglomerate(d, Linkage::Ward).merges[1].height ==
        doctest::Approx(std::sqrt(2.0 * 2.0 / 3.0) * 9.5).epsilon(1e-12));
}

TEST_CASE("average linkage matches the brute-force oracle on random inputs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 8;
    Matrix x(n, 2);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = u(rng);
    auto d = pairwise_distances(x, Metric::Euclidean);
    oracle::Table t(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d(i, j);
    auto ref = oracle::upgma(t);
    auto dend = agglomerate(d, Linkage::Average);
    for (int m = 0; m < n - 1; ++m)
      CHECK(dend.merges[static_cast<std::size_t>(m)].height ==
            doctest::Approx(ref.heights[static_cast<std::size_t>(m)]).epsilon(1e-12));
    for (int k = 1; k <= n; ++k) {
      std::set<std::set<std::size_t>> want(ref.snapshots.at(static_cast<std::size_t>(k)).begin(),
                                           ref.snapshots.at(static_cast<std::size_t>(k)).end());
      CHECK(oracle::blocks(cut_dendrogram(dend, k)) == want);
    }
  }
}

TEST_CASE("merge heights are monotone for single, average, complete and ward") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  Matrix x(40, 3);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
  for (auto l : {Linkage::Single, Linkage::Average, Linkage::Complete, Linkage::Ward}) {
    auto dend = agglomerate(pairwise_distances(x, Metric::Euclidean), l);
    REQUIRE(dend.merges.size() == 39);
    for (std::size_t m = 1; m < dend.merges.size(); ++m)
      CHECK(dend.merges[m].height >= dend.merges[m - 1].height - 1e-12);
    CHECK(dend.merges.back().size == 40);
  }
}
