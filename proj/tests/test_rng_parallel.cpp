#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tsagg/parallel.hpp"
#include "tsagg/rng.hpp"

using namespace tsagg;

TEST_CASE("splitmix64 reference outputs") {
  // First three outputs for state 0, from the published reference sequence.
  std::uint64_t state = 0;
  CHECK(splitmix64(state) == 0xE220A8397B1DCDAFull);
  CHECK(splitmix64(state) == 0x6E789E6AA1B965F4ull);
  CHECK(splitmix64(state) == 0x06C45D188009454Full);
}

TEST_CASE("derive_seed separates streams and masters") {
  const std::uint64_t a = derive_seed(42, 0);
  const std::uint64_t b = derive_seed(42, 1);
  const std::uint64_t c = derive_seed(43, 0);
  CHECK(a != b);
  CHECK(a != c);
  CHECK(b != c);
  CHECK(derive_seed(42, 0) == a);
}

TEST_CASE("uniform lies in [0,1) with the right moments") {
  Rng rng(123);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sumsq += u * u;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  // 4 sigma: sd(mean) = sqrt(1/12n)
  CHECK(std::fabs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::fabs(var - 1.0 / 12.0) < 0.002);
}

TEST_CASE("uniform(lo,hi) respects its interval") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform(-2.5, 0.5);
    REQUIRE(u >= -2.5);
    REQUIRE(u < 0.5);
  }
}

TEST_CASE("normal moments") {
  Rng rng(99);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sumsq += z * z;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::fabs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  // sd(var-hat) ~ sqrt(2/n)
  CHECK(std::fabs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
  const double shifted = rng.normal(3.0, 0.5);
  CHECK(std::isfinite(shifted));
}

TEST_CASE("uniform_index stays in range and is unbiased") {
  Rng rng(7);
  std::vector<int> counts(7, 0);
  const int n = 140000;
  for (int i = 0; i < n; ++i) {
    const std::size_t j = rng.uniform_index(7);
    REQUIRE(j < 7);
    ++counts[j];
  }
  const double expect = n / 7.0;
  const double sd = std::sqrt(expect * (1.0 - 1.0 / 7.0));
  for (int c : counts) CHECK(std::fabs(c - expect) < 5.0 * sd);
  CHECK(rng.uniform_index(1) == 0);
}

TEST_CASE("same seed reproduces the stream") {
  Rng a(2024), b(2024);
  for (int i = 0; i < 100; ++i) CHECK(a.raw() == b.raw());
  Rng c(2025);
  CHECK(c.raw() != Rng(2024).raw());
}

TEST_CASE("parallel_for matches the serial path") {
  const std::size_t n = 1000;
  std::vector<double> serial(n), parallel(n);
  auto body = [](std::size_t i) {
    Rng rng(derive_seed(9, i));
    return rng.uniform() + std::sqrt(static_cast<double>(i));
  };
  parallel_for(n, 1, [&](std::size_t i) { serial[i] = body(i); });
  parallel_for(n, 4, [&](std::size_t i) { parallel[i] = body(i); });
  CHECK(serial == parallel);
}

TEST_CASE("parallel_for propagates worker exceptions") {
  auto boom = [](std::size_t i) {
    if (i == 37) throw std::runtime_error("boom");
  };
  CHECK_THROWS_AS(parallel_for(100, 1, boom), std::runtime_error);
  CHECK_THROWS_AS(parallel_for(100, 4, boom), std::runtime_error);
}

TEST_CASE("resolve_jobs is positive") {
  CHECK(resolve_jobs(0) >= 1);
  CHECK(resolve_jobs(3) == 3);
}
