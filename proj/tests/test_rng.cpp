#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "batchbandits/rng.hpp"

using batchbandits::SplitRng;

TEST_CASE("same seed and stream replay the same sequence") {
  SplitRng a(42, 7);
  SplitRng b(42, 7);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct streams and seeds diverge") {
  SplitRng a(42, 0);
  SplitRng b(42, 1);
  SplitRng c(43, 0);
  int equal_ab = 0, equal_ac = 0;
  for (int i = 0; i < 100; ++i) {
    const auto av = a.next_u64();
    equal_ab += av == b.next_u64();
    equal_ac += av == c.next_u64();
  }
  REQUIRE(equal_ab == 0);
  REQUIRE(equal_ac == 0);
}

TEST_CASE("split children are reproducible and distinct") {
  SplitRng parent(9, 1);
  SplitRng c0 = parent.split(0);
  SplitRng c1 = parent.split(1);
  SplitRng c0_again = parent.split(0);
  const auto first = c0.next_u64();
  REQUIRE(first == c0_again.next_u64());
  REQUIRE(first != c1.next_u64());
}

TEST_CASE("uniform01 stays in [0,1) and is centered") {
  SplitRng rng(123);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  REQUIRE(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("gaussian draws have zero mean and unit variance") {
  SplitRng rng(321);
  double sum = 0.0, sumsq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sumsq += g * g;
  }
  const double mean = sum / n;
  REQUIRE(std::abs(mean) < 0.02);
  REQUIRE(std::abs(sumsq / n - mean * mean - 1.0) < 0.05);
}

TEST_CASE("below covers the whole range") {
  SplitRng rng(7);
  std::vector<int> counts(10, 0);
  for (int i = 0; i < 50000; ++i) {
    const auto v = rng.below(10);
    REQUIRE(v < 10);
    counts[static_cast<std::size_t>(v)] += 1;
  }
  for (int c : counts) REQUIRE(c > 4000);
}
