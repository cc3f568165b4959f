#pragma once

#include <cstdint>
#include <random>

namespace tsagg {

// splitmix64 step; used to derive independent substream seeds from a master
// seed so that parallel tasks get reproducible, decorrelated generators.
std::uint64_t splitmix64(std::uint64_t& state);

// Seed for substream `stream` of `master`. Stable across platforms and runs.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// Wrapper around mt19937_64 with hand-rolled variate transforms.  The
// standard <random> distributions are not pinned down by the standard, so
// results would differ between library implementations; these transforms
// make every stream reproducible from its seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Standard normal via Marsaglia's polar method.
  double normal();
  double normal(double mean, double sd);
  // Uniform integer in [0, n); n must be positive.  Unbiased via rejection.
  std::uint64_t uniform_index(std::uint64_t n);

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace tsagg
