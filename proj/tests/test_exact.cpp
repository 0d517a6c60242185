// Exact-value checks with pinned tolerances. Every expected value is either a
// hand-derived constant or produced by the brute-force routines in oracles.hpp.
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wocce/consensus.hpp"
#include "wocce/diversity.hpp"
#include "wocce/independence.hpp"
#include "wocce/metrics.hpp"

using namespace wocce;

TEST_SUITE("exact") {
  TEST_CASE("apmm n=4 nc=2 sizes {2,2} is 2/3") {
    std::vector<std::size_t> sizes{2, 2};
    CHECK(std::abs(apmm_raw(2, 4, sizes) - 2.0 / 3.0) <= 1e-12);
    CHECK(std::abs(oracle::apmm_in_base(2, 4, {2, 2}, 2.0) - 2.0 / 3.0) <= 1e-12);
  }

  TEST_CASE("likeness 1-D trace is 1/3") {
    Matrix a(2, 1), b(2, 1);
    a << 0, 1;
    b << 0, 3;
    CHECK(std::abs(likeness(a, b) - 1.0 / 3.0) <= 1e-12);
    CHECK(std::abs(oracle::likeness({{0}, {1}}, {{0}, {3}}) - 1.0 / 3.0) <= 1e-12);
  }

  TEST_CASE("co-association three-point example is {1, 0.5, 0.5}") {
    std::vector<Partition> crowd{make_partition({0, 0, 1}, AlgorithmDescriptor::kmeans(), Matrix(), 0),
                                 make_partition({0, 0, 0}, AlgorithmDescriptor::kmeans(), Matrix(), 0)};
    auto c = co_association(crowd, 3).values;
    CHECK(c(0, 1) == 1.0);
    CHECK(c(0, 2) == 0.5);
    CHECK(c(1, 2) == 0.5);
  }

  TEST_CASE("average linkage merges at 1 and 4.5") {
    Matrix d(3, 3);
    d << 0, 1, 4, 1, 0, 5, 4, 5, 0;
    auto dend = average_linkage(d);
    CHECK(dend.merges.at(0).height == 1.0);
    CHECK(dend.merges.at(1).height == 4.5);
    auto ref = oracle::upgma({{0, 1, 4}, {1, 0, 5}, {4, 5, 0}});
    CHECK(ref.heights == std::vector<double>{1.0, 4.5});
  }

  TEST_CASE("Hungarian accuracy example is 75") {
    CHECK(accuracy(Labels{0, 1, 1, 1}, Labels{0, 0, 1, 1}) == 75.0);
    CHECK(oracle::accuracy({0, 1, 1, 1}, {0, 0, 1, 1}) == 75.0);
  }

  TEST_CASE("nmi(P, P) is 1") {
    CHECK(std::abs(nmi({0, 0, 1, 1, 2, 2}, {0, 0, 1, 1, 2, 2}) - 1.0) <= 1e-12);
    CHECK(std::abs(nmi({0, 0, 1, 1}, {0, 1, 0, 1})) <= 1e-12);
  }
}
