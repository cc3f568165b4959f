#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tsagg/basis.hpp"
#include "tsagg/core.hpp"
#include "tsagg/prior.hpp"

namespace tsagg {

struct MoveProbs {
  double birth = 1.0 / 3.0;
  double death = 1.0 / 3.0;
  double update = 1.0 / 3.0;
};

// Tuning for the reversible-jump chain targeting the Gibbs posterior
// density proportional to exp(-lambda r_n(theta)) d pi(theta).
struct SamplerConfig {
  double lambda = 0.0;    // inverse temperature; >= 0 (0 samples the prior)
  double b = 10.0;        // prior amplitude; l1 radius is b + 1
  std::size_t k_max = 0;  // support cap; 0 resolves to min(n, p)
  std::size_t n_iter = 20000;
  std::size_t n_burn = 10000;
  std::size_t thinning = 1;  // record every thinning-th state
  MoveProbs move_probs;
  double update_step = 0.0;  // random-walk half-width; 0 resolves to
                             // 0.1 (b + 1) / sqrt(p)
  double birth_proposal_scale = 0.5;  // birth coefficient ~ U(-s, s)
  std::uint64_t seed = 1;
  std::size_t risk_refresh = 1000;  // full residual recompute cadence

  void validate() const;
  std::size_t resolved_k_max(std::size_t n, std::size_t p) const;
  double resolved_update_step(std::size_t p) const;
};

struct MoveStats {
  std::uint64_t proposed = 0;
  std::uint64_t accepted = 0;
  double acceptance_rate() const {
    return proposed == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposed);
  }
};

// Thinned trajectory.  states[s] is the state after iteration
// (s + 1) * thinning; log_targets aligns with states.
struct Chain {
  std::size_t n_iter = 0;
  std::size_t thinning = 1;
  std::vector<SparseParam> states;
  std::vector<double> log_targets;
  MoveStats birth, death, update;
};

// The lambda = n / var(x) default temperature.
double heuristic_lambda(const TimeSeries& series);

// Runs the chain from theta = 0.  Moves: birth (add a uniformly chosen
// absent index with coefficient ~ U(-s, s)), death (drop a uniformly chosen
// support entry; only reversible when its coefficient lies inside the birth
// window, otherwise the move is rejected outright), update (random-walk
// step on one support coefficient).  Birth is skipped at the support cap,
// death/update at the empty support; skipped draws count as rejected
// proposals.
Chain run_rjmcmc(const TimeSeries& series, const PredictorBasis& basis,
                 const SamplerConfig& config);

// Mean of the states recorded after iteration n_burn.
SparseParam posterior_mean(const Chain& chain, std::size_t n_burn);

// Deterministic quadrature oracle for the posterior mean; p <= 2 only.
// Trapezoid rule with the given step on each support subspace plus the
// zero-vector atom, evaluating exp(-lambda r) against the prior density
// pointwise.  Slow by design; used to validate the chain.
SparseParam grid_posterior_mean(const TimeSeries& series,
                                const PredictorBasis& basis, double lambda,
                                double b, std::size_t k_max, double grid_step);

struct GibbsFit {
  SparseParam theta;  // posterior mean estimate
  double lambda = 0.0;
  double train_risk = 0.0;  // empirical risk of theta on the training data
  Chain chain;
};

// End-to-end fit: resolve lambda (heuristic unless given), run the chain,
// average the post-burn-in states.
GibbsFit fit_gibbs(const TimeSeries& series, const PredictorBasis& basis,
                   SamplerConfig config,
                   std::optional<double> lambda = std::nullopt);

// Closed-form transition arithmetic, recomputed from scratch; used by the
// detailed-balance checks.  config.k_max must be explicit here.
namespace rjmcmc {

// log of exp(-lambda r_n) * prior density (the unnormalized target).
double log_target(const TimeSeries& series, const PredictorBasis& basis,
                  const SamplerConfig& config, const SparseParam& theta);

// log density of proposing `to` from `from` under the move mixture, with
// respect to the same reference measure as the prior; -infinity when `to`
// is not reachable in one move.
double log_proposal(const SamplerConfig& config, std::size_t p,
                    const SparseParam& from, const SparseParam& to);

// log of the Metropolis-Hastings acceptance probability for from -> to.
double log_acceptance(const TimeSeries& series, const PredictorBasis& basis,
                      const SamplerConfig& config, const SparseParam& from,
                      const SparseParam& to);

}  // namespace rjmcmc

}  // namespace tsagg
