#include "tsagg/prior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace tsagg {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_binomial(std::size_t p, std::size_t k) {
  return std::lgamma(static_cast<double>(p) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(p - k) + 1.0);
}
}  // namespace

PriorSpec::PriorSpec(std::size_t p_, double b_, std::size_t k_max_)
    : p(p_), b(b_), k_max(k_max_) {
  if (p == 0) throw std::invalid_argument("PriorSpec: p must be positive");
  if (!(b >= 0.0) || !std::isfinite(b))
    throw std::invalid_argument("PriorSpec: b must be finite and >= 0");
  if (k_max == 0 || k_max > p)
    throw std::invalid_argument("PriorSpec: k_max must lie in [1, p]");
}

double model_log_weight(std::size_t k, std::size_t p, std::size_t k_max) {
  if (k_max == 0 || k_max > p)
    throw std::invalid_argument("model_log_weight: k_max must lie in [1, p]");
  if (k > k_max) return kNegInf;
  // Normalizer of 2^{-k-1} over k = 0..k_max is 1 - 2^{-k_max-1}.
  const double log_norm = std::log1p(-std::exp2(-static_cast<double>(k_max) - 1.0));
  const double log_geom = -(static_cast<double>(k) + 1.0) * std::numbers::ln2;
  return log_geom - log_norm - log_binomial(p, k);
}

double l1_ball_log_volume(std::size_t k, double radius) {
  if (k == 0) return 0.0;
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("l1_ball_log_volume: radius must be positive");
  return static_cast<double>(k) * std::log(2.0 * radius) -
         std::lgamma(static_cast<double>(k) + 1.0);
}

double log_prior_density(const SparseParam& theta, const PriorSpec& spec) {
  if (theta.dim() != spec.p)
    throw std::invalid_argument("log_prior_density: dimension mismatch");
  const std::size_t k = theta.support_size();
  if (k > spec.k_max) return kNegInf;
  if (k == 0) return model_log_weight(0, spec.p, spec.k_max);
  if (theta.l1_norm() >= spec.radius()) return kNegInf;
  return model_log_weight(k, spec.p, spec.k_max) -
         l1_ball_log_volume(k, spec.radius());
}

SparseParam sample_prior(const PriorSpec& spec, Rng& rng) {
  // Support size: P(k) proportional to 2^{-k-1}, k = 0..k_max.
  const double norm = 1.0 - std::exp2(-static_cast<double>(spec.k_max) - 1.0);
  double u = rng.uniform() * norm;
  std::size_t k = 0;
  double cum = 0.0;
  for (; k < spec.k_max; ++k) {
    cum += std::exp2(-static_cast<double>(k) - 1.0);
    if (u < cum) break;
  }
  if (k == 0) return SparseParam(spec.p);

  // Support set: k distinct indices uniformly at random (partial shuffle).
  std::vector<std::size_t> pool(spec.p);
  for (std::size_t j = 0; j < spec.p; ++j) pool[j] = j;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t r = i + static_cast<std::size_t>(rng.uniform_index(spec.p - i));
    std::swap(pool[i], pool[r]);
  }
  std::vector<std::size_t> support(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(support.begin(), support.end());

  // Coefficients: uniform on the l1 ball via the Dirichlet construction —
  // k+1 iid exponentials, the first k shares scaled by the radius give the
  // magnitudes (the last share is the slack inside the ball).
  std::vector<double> coeffs(k);
  for (;;) {
    std::vector<double> e(k + 1);
    double total = 0.0;
    for (auto& v : e) {
      v = -std::log1p(-rng.uniform());
      total += v;
    }
    if (total == 0.0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < k; ++i) {
      const double magnitude = spec.radius() * e[i] / total;
      if (magnitude == 0.0) {
        ok = false;  // would break the nonzero-coefficient invariant; redraw
        break;
      }
      coeffs[i] = rng.uniform() < 0.5 ? -magnitude : magnitude;
    }
    if (ok) break;
  }
  return SparseParam(spec.p, std::move(support), std::move(coeffs));
}

}  // namespace tsagg
