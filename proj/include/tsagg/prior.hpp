#pragma once

#include <cstddef>

#include "tsagg/core.hpp"
#include "tsagg/rng.hpp"

namespace tsagg {

// The sparsity prior over R^p: support size k is drawn with weight
// proportional to 2^{-k-1} (truncated at k_max and renormalized), the
// support set uniformly among the C(p, k) candidates, and the coefficients
// uniformly on the l1 ball of radius b + 1 in the selected subspace.
// k = 0 is a point mass at the zero vector.
struct PriorSpec {
  std::size_t p = 0;      // ambient dimension
  double b = 10.0;        // amplitude parameter; l1 radius is b + 1
  std::size_t k_max = 0;  // largest support size carrying prior mass

  PriorSpec(std::size_t p, double b, std::size_t k_max);

  double radius() const { return b + 1.0; }
};

// log of the prior weight of one specific support set of size k, i.e.
// log[ 2^{-k-1} / (1 - 2^{-k_max-1}) / C(p, k) ].  Requires k <= k_max <= p.
double model_log_weight(std::size_t k, std::size_t p, std::size_t k_max);

// log volume of the l1 ball of the given radius in R^k: log[(2r)^k / k!].
// k = 0 gives 0 (the ball degenerates to a point of unit mass).
double l1_ball_log_volume(std::size_t k, double radius);

// Log density of theta under the prior, taken with respect to the reference
// measure that is Lebesgue on each support subspace and counting at the
// zero vector.  -infinity when the support is larger than k_max or the l1
// norm reaches the radius.
double log_prior_density(const SparseParam& theta, const PriorSpec& spec);

// Draws from the prior using the caller's stream.
SparseParam sample_prior(const PriorSpec& spec, Rng& rng);

}  // namespace tsagg
