#include "tsagg/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace tsagg {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

void SamplerConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("sampler: lambda must be finite and >= 0");
  if (!(b >= 0.0) || !std::isfinite(b))
    throw std::invalid_argument("sampler: b must be finite and >= 0");
  if (n_iter == 0) throw std::invalid_argument("sampler: n_iter must be positive");
  if (n_burn >= n_iter)
    throw std::invalid_argument("sampler: n_burn must be smaller than n_iter");
  if (thinning == 0) throw std::invalid_argument("sampler: thinning must be positive");
  const double total = move_probs.birth + move_probs.death + move_probs.update;
  if (move_probs.birth <= 0.0 || move_probs.death <= 0.0 || move_probs.update <= 0.0 ||
      std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("sampler: move probabilities must be positive and sum to 1");
  if (update_step < 0.0 || !std::isfinite(update_step))
    throw std::invalid_argument("sampler: update_step must be finite and >= 0");
  if (!(birth_proposal_scale > 0.0) || !std::isfinite(birth_proposal_scale))
    throw std::invalid_argument("sampler: birth_proposal_scale must be positive");
}

std::size_t SamplerConfig::resolved_k_max(std::size_t n, std::size_t p) const {
  if (k_max > 0) return k_max;
  return std::min(n, p);
}

double SamplerConfig::resolved_update_step(std::size_t p) const {
  if (update_step > 0.0) return update_step;
  return 0.1 * (b + 1.0) / std::sqrt(static_cast<double>(p));
}

double heuristic_lambda(const TimeSeries& series) {
  if (series.variance() <= 0.0)
    throw std::invalid_argument("heuristic_lambda: series has zero variance");
  return static_cast<double>(series.size()) / series.variance();
}

namespace {

// Lazily materialized design columns: column j holds g_j evaluated on the
// window preceding each predicted observation.
class DesignColumns {
 public:
  DesignColumns(const TimeSeries& series, const PredictorBasis& basis)
      : series_(series), basis_(basis), window_(basis.window()) {}

  const std::vector<double>& get(std::size_t j) {
    auto it = cache_.find(j);
    if (it != cache_.end()) return it->second;
    const std::size_t q = basis_.window();
    const std::size_t n = series_.size();
    const auto& x = series_.values();
    std::vector<double> col(n - q);
    for (std::size_t r = 0; r + q < n; ++r) {
      const std::size_t i = q + r;
      for (std::size_t d = 0; d < q; ++d) window_[d] = x[i - 1 - d];
      col[r] = basis_.evaluate(j, window_);
    }
    return cache_.emplace(j, std::move(col)).first->second;
  }

 private:
  const TimeSeries& series_;
  const PredictorBasis& basis_;
  std::vector<double> window_;
  std::unordered_map<std::size_t, std::vector<double>> cache_;
};

}  // namespace

Chain run_rjmcmc(const TimeSeries& series, const PredictorBasis& basis,
                 const SamplerConfig& config) {
  config.validate();
  const std::size_t n = series.size();
  const std::size_t q = basis.window();
  const std::size_t p = basis.size();
  if (n <= q) throw std::invalid_argument("run_rjmcmc: series shorter than window");
  const std::size_t n_terms = n - q;
  const std::size_t k_cap = config.resolved_k_max(n, p);
  const PriorSpec prior(p, config.b, k_cap);
  const double radius = prior.radius();
  const double step = config.resolved_update_step(p);
  const double sb = config.birth_proposal_scale;
  const double lambda = config.lambda;
  const MoveProbs& mp = config.move_probs;

  // Per-support-size prior pieces; the acceptance ratios only ever need
  // differences of adjacent entries.
  std::vector<double> log_weight(k_cap + 1), log_volume(k_cap + 1);
  for (std::size_t k = 0; k <= k_cap; ++k) {
    log_weight[k] = model_log_weight(k, p, k_cap);
    log_volume[k] = l1_ball_log_volume(k, radius);
  }

  Rng rng(config.seed);
  DesignColumns columns(series, basis);

  SparseParam theta(p);
  const auto& x = series.values();
  std::vector<double> resid(x.begin() + static_cast<std::ptrdiff_t>(q), x.end());
  double sumsq = 0.0;
  for (double r : resid) sumsq += r * r;

  // Sum of squares after adding delta to coefficient j, without committing.
  auto shifted_sumsq = [&](const std::vector<double>& col, double delta) {
    double s = 0.0;
    for (std::size_t r = 0; r < n_terms; ++r) {
      const double v = resid[r] - delta * col[r];
      s += v * v;
    }
    return s;
  };
  auto commit_shift = [&](const std::vector<double>& col, double delta,
                          double new_sumsq) {
    for (std::size_t r = 0; r < n_terms; ++r) resid[r] -= delta * col[r];
    sumsq = new_sumsq;
  };
  auto refresh_residuals = [&] {
    std::copy(x.begin() + static_cast<std::ptrdiff_t>(q), x.end(), resid.begin());
    const auto& support = theta.support();
    const auto& coeffs = theta.coeffs();
    for (std::size_t i = 0; i < support.size(); ++i) {
      const auto& col = columns.get(support[i]);
      for (std::size_t r = 0; r < n_terms; ++r) resid[r] -= coeffs[i] * col[r];
    }
    sumsq = 0.0;
    for (double r : resid) sumsq += r * r;
  };
  auto accept_draw = [&](double log_alpha) {
    if (log_alpha >= 0.0) return true;
    return std::log(rng.uniform()) < log_alpha;
  };

  Chain chain;
  chain.n_iter = config.n_iter;
  chain.thinning = config.thinning;
  chain.states.reserve(config.n_iter / config.thinning);
  chain.log_targets.reserve(config.n_iter / config.thinning);

  for (std::size_t t = 1; t <= config.n_iter; ++t) {
    const double u_move = rng.uniform();
    if (u_move < mp.birth) {
      ++chain.birth.proposed;
      const std::size_t k = theta.support_size();
      if (k < k_cap) {
        // Uniform index outside the support: shift the draw past the
        // (sorted) occupied slots.
        std::size_t j = static_cast<std::size_t>(rng.uniform_index(p - k));
        for (std::size_t s : theta.support()) {
          if (s <= j) ++j;
          else break;
        }
        const double v = rng.uniform(-sb, sb);
        if (v != 0.0 && theta.l1_norm() + std::abs(v) < radius) {
          const auto& col = columns.get(j);
          const double new_sumsq = shifted_sumsq(col, v);
          const double log_alpha =
              lambda * (sumsq - new_sumsq) / static_cast<double>(n_terms) +
              log_weight[k + 1] - log_weight[k] -
              (log_volume[k + 1] - log_volume[k]) +
              std::log(mp.death) - std::log(mp.birth) -
              std::log(static_cast<double>(k + 1)) +
              std::log(static_cast<double>(p - k)) + std::log(2.0 * sb);
          if (accept_draw(log_alpha)) {
            theta.insert(j, v);
            commit_shift(col, v, new_sumsq);
            ++chain.birth.accepted;
          }
        }
      }
    } else if (u_move < mp.birth + mp.death) {
      ++chain.death.proposed;
      const std::size_t k = theta.support_size();
      if (k > 0) {
        const std::size_t pos = static_cast<std::size_t>(rng.uniform_index(k));
        const double v = theta.coeffs()[pos];
        // The reverse birth can only produce coefficients inside its
        // proposal window; outside it the move is irreversible and must
        // be rejected.
        if (std::abs(v) < sb) {
          const std::size_t j = theta.support()[pos];
          const auto& col = columns.get(j);
          const double new_sumsq = shifted_sumsq(col, -v);
          const double log_alpha =
              lambda * (sumsq - new_sumsq) / static_cast<double>(n_terms) +
              log_weight[k - 1] - log_weight[k] +
              (log_volume[k] - log_volume[k - 1]) +
              std::log(mp.birth) - std::log(mp.death) +
              std::log(static_cast<double>(k)) -
              std::log(static_cast<double>(p - k + 1)) - std::log(2.0 * sb);
          if (accept_draw(log_alpha)) {
            theta.erase_position(pos);
            commit_shift(col, -v, new_sumsq);
            ++chain.death.accepted;
          }
        }
      }
    } else {
      ++chain.update.proposed;
      const std::size_t k = theta.support_size();
      if (k > 0) {
        const std::size_t pos = static_cast<std::size_t>(rng.uniform_index(k));
        const double v = theta.coeffs()[pos];
        const double vp = v + rng.uniform(-step, step);
        if (vp != 0.0 &&
            theta.l1_norm() - std::abs(v) + std::abs(vp) < radius) {
          const std::size_t j = theta.support()[pos];
          const auto& col = columns.get(j);
          const double new_sumsq = shifted_sumsq(col, vp - v);
          // Same support set and a symmetric proposal: only the risk moves.
          const double log_alpha =
              lambda * (sumsq - new_sumsq) / static_cast<double>(n_terms);
          if (accept_draw(log_alpha)) {
            theta.set_coeff_at_position(pos, vp);
            commit_shift(col, vp - v, new_sumsq);
            ++chain.update.accepted;
          }
        }
      }
    }

    if (config.risk_refresh > 0 && t % config.risk_refresh == 0)
      refresh_residuals();

    if (t % config.thinning == 0) {
      chain.states.push_back(theta);
      chain.log_targets.push_back(
          -lambda * sumsq / static_cast<double>(n_terms) +
          log_weight[theta.support_size()] - log_volume[theta.support_size()]);
    }
  }
  return chain;
}

SparseParam posterior_mean(const Chain& chain, std::size_t n_burn) {
  if (chain.states.empty())
    throw std::invalid_argument("posterior_mean: empty chain");
  const std::size_t first = n_burn / chain.thinning;
  if (first >= chain.states.size())
    throw std::invalid_argument("posterior_mean: burn-in swallows the whole chain");
  const std::size_t p = chain.states.front().dim();
  std::vector<double> acc(p, 0.0);
  for (std::size_t s = first; s < chain.states.size(); ++s) {
    const auto& state = chain.states[s];
    const auto& support = state.support();
    const auto& coeffs = state.coeffs();
    for (std::size_t i = 0; i < support.size(); ++i) acc[support[i]] += coeffs[i];
  }
  const double count = static_cast<double>(chain.states.size() - first);
  for (double& a : acc) a /= count;
  return SparseParam::from_dense(p, acc);
}

SparseParam grid_posterior_mean(const TimeSeries& series,
                                const PredictorBasis& basis, double lambda,
                                double b, std::size_t k_max, double grid_step) {
  const std::size_t p = basis.size();
  const std::size_t q = basis.window();
  if (p > 2)
    throw std::invalid_argument("grid_posterior_mean: only p <= 2 is supported");
  if (!(grid_step > 0.0) || !std::isfinite(grid_step))
    throw std::invalid_argument("grid_posterior_mean: grid_step must be positive");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("grid_posterior_mean: lambda must be finite and >= 0");
  const PriorSpec prior(p, b, std::min(k_max, p));
  const double radius = prior.radius();
  // Midpoint rule on an even number of cells: no node lands on the zero
  // vector, the radius, or the l1 boundary, where the density is singular
  // or the subspace decomposition overlaps.
  std::size_t cells =
      static_cast<std::size_t>(std::ceil(2.0 * radius / grid_step - 1e-12));
  cells += cells % 2;
  const double g = 2.0 * radius / static_cast<double>(cells);

  auto node = [&](std::size_t i) {
    return -radius + g * (static_cast<double>(i) + 0.5);
  };
  auto log_f = [&](const SparseParam& theta) {
    const double lp = log_prior_density(theta, prior);
    if (lp == kNegInf) return kNegInf;
    return -lambda * empirical_risk(series, basis, theta, q).risk + lp;
  };

  // Two passes: find the max log integrand, then accumulate stabilized sums.
  // visit() enumerates every quadrature contribution exactly once; nodes
  // outside the l1 ball drop out through the -infinity prior density.
  auto visit = [&](auto&& take) {
    take(SparseParam(p), 1.0);
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t i = 0; i < cells; ++i)
        take(SparseParam(p, {j}, {node(i)}), g);
    if (p == 2 && prior.k_max >= 2)
      for (std::size_t i = 0; i < cells; ++i)
        for (std::size_t l = 0; l < cells; ++l)
          take(SparseParam(p, {0, 1}, {node(i), node(l)}), g * g);
  };

  double max_log = kNegInf;
  visit([&](const SparseParam& theta, double) {
    max_log = std::max(max_log, log_f(theta));
  });
  if (max_log == kNegInf)
    throw std::invalid_argument("grid_posterior_mean: integrand vanished everywhere");

  double zsum = 0.0;
  std::vector<double> num(p, 0.0);
  visit([&](const SparseParam& theta, double weight) {
    const double lf = log_f(theta);
    if (lf == kNegInf) return;
    const double w = weight * std::exp(lf - max_log);
    zsum += w;
    const auto& support = theta.support();
    const auto& coeffs = theta.coeffs();
    for (std::size_t i = 0; i < support.size(); ++i) num[support[i]] += w * coeffs[i];
  });
  for (double& v : num) v /= zsum;
  return SparseParam::from_dense(p, num);
}

GibbsFit fit_gibbs(const TimeSeries& series, const PredictorBasis& basis,
                   SamplerConfig config, std::optional<double> lambda) {
  config.lambda = lambda ? *lambda : heuristic_lambda(series);
  GibbsFit out{SparseParam(basis.size()), config.lambda, 0.0, {}};
  out.chain = run_rjmcmc(series, basis, config);
  out.theta = posterior_mean(out.chain, config.n_burn);
  out.train_risk = empirical_risk(series, basis, out.theta, basis.window()).risk;
  return out;
}

namespace rjmcmc {

namespace {
std::size_t require_explicit_k_max(const SamplerConfig& config) {
  if (config.k_max == 0)
    throw std::invalid_argument("rjmcmc closed forms need an explicit k_max");
  return config.k_max;
}
}  // namespace

double log_target(const TimeSeries& series, const PredictorBasis& basis,
                  const SamplerConfig& config, const SparseParam& theta) {
  const PriorSpec prior(basis.size(), config.b, require_explicit_k_max(config));
  const double lp = log_prior_density(theta, prior);
  if (lp == kNegInf) return kNegInf;
  return -config.lambda *
             empirical_risk(series, basis, theta, basis.window()).risk +
         lp;
}

double log_proposal(const SamplerConfig& config, std::size_t p,
                    const SparseParam& from, const SparseParam& to) {
  const std::size_t k_cap = std::min(require_explicit_k_max(config), p);
  if (from.dim() != p || to.dim() != p)
    throw std::invalid_argument("log_proposal: dimension mismatch");
  const std::size_t kf = from.support_size();
  const std::size_t kt = to.support_size();
  const MoveProbs& mp = config.move_probs;

  if (kt == kf + 1) {
    // Birth: `to` must extend `from` by one index, other coefficients equal.
    if (kf >= k_cap) return kNegInf;
    std::size_t fi = 0;
    std::size_t born = p;  // sentinel
    for (std::size_t ti = 0; ti < kt; ++ti) {
      if (fi < kf && from.support()[fi] == to.support()[ti]) {
        if (from.coeffs()[fi] != to.coeffs()[ti]) return kNegInf;
        ++fi;
      } else if (born == p) {
        born = ti;
      } else {
        return kNegInf;
      }
    }
    if (fi != kf || born == p) return kNegInf;
    const double v = to.coeffs()[born];
    if (std::abs(v) >= config.birth_proposal_scale) return kNegInf;
    return std::log(mp.birth) - std::log(static_cast<double>(p - kf)) -
           std::log(2.0 * config.birth_proposal_scale);
  }

  if (kt + 1 == kf) {
    // Death: `to` must be `from` minus one support entry.
    std::size_t ti = 0;
    std::size_t dropped = p;
    for (std::size_t fi = 0; fi < kf; ++fi) {
      if (ti < kt && from.support()[fi] == to.support()[ti]) {
        if (from.coeffs()[fi] != to.coeffs()[ti]) return kNegInf;
        ++ti;
      } else if (dropped == p) {
        dropped = fi;
      } else {
        return kNegInf;
      }
    }
    if (ti != kt || dropped == p) return kNegInf;
    return std::log(mp.death) - std::log(static_cast<double>(kf));
  }

  if (kt == kf && kf > 0 && from.support() == to.support()) {
    // Update: exactly one coefficient moved, within the random-walk window.
    const double step = config.resolved_update_step(p);
    std::size_t changed = p;
    for (std::size_t i = 0; i < kf; ++i) {
      if (from.coeffs()[i] != to.coeffs()[i]) {
        if (changed != p) return kNegInf;
        changed = i;
      }
    }
    if (changed == p) return kNegInf;  // identical states: no density
    const double delta = to.coeffs()[changed] - from.coeffs()[changed];
    if (std::abs(delta) >= step) return kNegInf;
    return std::log(mp.update) - std::log(static_cast<double>(kf)) -
           std::log(2.0 * step);
  }

  return kNegInf;
}

double log_acceptance(const TimeSeries& series, const PredictorBasis& basis,
                      const SamplerConfig& config, const SparseParam& from,
                      const SparseParam& to) {
  const std::size_t p = basis.size();
  const double forward = log_proposal(config, p, from, to);
  if (forward == kNegInf) return kNegInf;
  const double lt_from = log_target(series, basis, config, from);
  if (lt_from == kNegInf)
    throw std::invalid_argument("log_acceptance: `from` lies outside the target support");
  const double lt_to = log_target(series, basis, config, to);
  if (lt_to == kNegInf) return kNegInf;
  const double backward = log_proposal(config, p, to, from);
  if (backward == kNegInf) return kNegInf;
  return std::min(0.0, lt_to + backward - lt_from - forward);
}

}  // namespace rjmcmc

}  // namespace tsagg
