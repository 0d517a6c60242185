#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wocce/diversity.hpp"
#include "wocce/error.hpp"

using namespace wocce;

namespace {

Partition part(Labels l) { return make_partition(std::move(l), AlgorithmDescriptor::kmeans(), Matrix(), 0); }

}  // namespace

TEST_CASE("apmm hand values") {
  std::vector<std::size_t> two{2, 2};
  CHECK(apmm_raw(2, 4, two) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(apmm_raw(2, 4, two) - 2.0 / 3.0) < 1e-12);
  std::vector<std::size_t> one{4};
  CHECK(apmm_raw(4, 4, one) == 1.0);
  CHECK(apmm_raw(2, 4, one) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(apmm({{0, 1}, 4}, part({0, 0, 0, 0})) == 1.0);
  CHECK(apmm({{0, 1}, 4}, part({0, 0, 1, 1})) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("apmm is independent of the logarithm base") {
  for (double base : {2.0, 10.0, std::exp(1.0)})
    CHECK(oracle::apmm_in_base(2, 4, {2, 2}, base) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  std::vector<std::size_t> sizes{3, 5, 2};
  double lib = apmm_raw(3, 10, sizes);
  CHECK(oracle::apmm_in_base(3, 10, {3, 5, 2}, 2.0) == doctest::Approx(lib).epsilon(1e-12));
  CHECK(oracle::apmm_in_base(3, 10, {3, 5, 2}, 10.0) == doctest::Approx(lib).epsilon(1e-12));
}

TEST_CASE("apmm rejects mismatched sample counts") {
  CHECK_THROWS_AS(apmm({{0}, 5}, part({0, 1, 1, 0})), SizeError);
}

TEST_CASE("aapmm, a3 and diversity") {
  auto balanced = part({0, 0, 1, 1});
  std::vector<Partition> twice{balanced, balanced};
  CHECK(aapmm({{0, 1}, 4}, twice) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // C covering every sample scores 1 against a one-cluster partition (0/0)
  // and 0 against the balanced one, so the mean is 0.5.
  std::vector<Partition> mixed{part({0, 0, 0, 0}), balanced};
  CHECK(aapmm({{0, 1, 2, 3}, 4}, mixed) == 0.5);
  CHECK(aapmm({{0, 1}, 4}, {mixed.begin() + 1, 1}) == apmm({{0, 1}, 4}, balanced));
  std::vector<Partition> self{balanced};
  CHECK(a3(balanced, self) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(diversity(balanced, self) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(diversity(balanced, {}) == 1.0);
  CHECK_THROWS_AS(aapmm({{0}, 4}, {}), DomainError);
}

TEST_CASE("a3 weights clusters by size") {
  // Sizes {3, 1}; the reference is a single cluster so the size-3 cluster
  // scores apmm_raw(3,4,{4}) clamped and the singleton apmm_raw(1,4,{4}).
  auto p = part({0, 0, 0, 1});
  std::vector<Partition> ref{part({0, 0, 0, 0})};
  std::vector<std::size_t> one{4};
  double big = std::min(1.0, apmm_raw(3, 4, one));
  double small = std::min(1.0, apmm_raw(1, 4, one));
  CHECK(a3(p, ref) == doctest::Approx(0.75 * big + 0.25 * small).epsilon(1e-12));
}
