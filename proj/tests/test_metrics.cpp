#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wocce/error.hpp"
#include "wocce/metrics.hpp"

using namespace wocce;

TEST_CASE("accuracy examples") {
  CHECK(accuracy(Labels{0, 1, 1, 1}, Labels{0, 0, 1, 1}) == 75.0);
  CHECK(oracle::accuracy({0, 1, 1, 1}, {0, 0, 1, 1}) == 75.0);
  CHECK(accuracy(Labels{2, 2, 0, 1}, Labels{0, 0, 1, 2}) == 100.0);
  CHECK_THROWS_AS(accuracy(Labels{0, 1}, Labels{0}), SizeError);
}

TEST_CASE("accuracy with unequal cluster counts matches the permutation oracle") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    int kp = 1 + t % 5, kt = 1 + (t / 5) % 5;
    auto pred = oracle::random_labels(rng, 30, kp);
    auto truth = oracle::random_labels(rng, 30, kt);
    CHECK(accuracy(pred, truth) == doctest::Approx(oracle::accuracy(pred, truth)).epsilon(1e-12));
  }
}

TEST_CASE("solve_assignment finds the minimum cost") {
  Matrix c(3, 3);
  c << 4, 1, 3, 2, 0, 5, 3, 2, 2;
  auto a = solve_assignment(c);
  double cost = 0.0;
  for (int i = 0; i < 3; ++i) cost += c(i, a[static_cast<std::size_t>(i)]);
  CHECK(cost == 5.0);
}

TEST_CASE("nmi examples") {
  CHECK(nmi({0, 0, 1, 1, 2}, {0, 0, 1, 1, 2}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nmi({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(nmi({0, 0, 0, 0}, {0, 0, 1, 1}) == 0.0);
  CHECK(nmi({0, 0, 0}, {5, 5, 5}) == 1.0);
}

TEST_CASE("nmi matches the direct oracle") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    auto a = oracle::random_labels(rng, 40, 2 + t % 4);
    auto b = oracle::random_labels(rng, 40, 2 + (t / 4) % 4);
    CHECK(nmi(a, b) == doctest::Approx(oracle::nmi(a, b)).epsilon(1e-10));
  }
}
