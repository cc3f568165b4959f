#include "tsagg/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tsagg/parallel.hpp"
#include "tsagg/rng.hpp"

namespace tsagg {

namespace {
constexpr double kPosInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_phi0(double phi0) {
  if (!(phi0 >= 0.0) || !(phi0 <= 1.0))
    throw std::invalid_argument("mixing profile: phi0 must lie in [0, 1]");
}
}  // namespace

MixingProfile::MixingProfile(Kind kind, std::vector<double> values, double c,
                             double rho, std::size_t m, double phi0)
    : kind_(kind), values_(std::move(values)), c_(c), rho_(rho), m_(m), phi0_(phi0) {}

MixingProfile MixingProfile::explicit_profile(std::vector<double> values,
                                              double phi0) {
  check_phi0(phi0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !(values[i] <= 1.0))
      throw std::invalid_argument("mixing profile: phi_r must lie in [0, 1]");
    if (i > 0 && values[i] > values[i - 1])
      throw std::invalid_argument("mixing profile: phi_r must be non-increasing");
  }
  return MixingProfile(Kind::explicit_seq, std::move(values), 0.0, 0.0, 0, phi0);
}

MixingProfile MixingProfile::geometric(double c, double rho, double phi0) {
  check_phi0(phi0);
  if (!(c >= 0.0) || !std::isfinite(c))
    throw std::invalid_argument("mixing profile: c must be finite and >= 0");
  if (!(rho > 0.0) || !(rho < 1.0))
    throw std::invalid_argument("mixing profile: rho must lie in (0, 1)");
  return MixingProfile(Kind::geometric, {}, c, rho, 0, phi0);
}

MixingProfile MixingProfile::m_dependent(std::size_t m, double phi0) {
  check_phi0(phi0);
  return MixingProfile(Kind::m_dependent, {}, 0.0, 0.0, m, phi0);
}

MixingProfile MixingProfile::iid() { return m_dependent(0); }

double MixingProfile::phi(std::size_t r) const {
  if (r == 0) return phi0_;
  switch (kind_) {
    case Kind::explicit_seq:
      return r <= values_.size() ? values_[r - 1] : 0.0;
    case Kind::geometric:
      return std::min(1.0, c_ * std::pow(rho_, static_cast<double>(r)));
    case Kind::m_dependent:
      return r <= m_ ? 1.0 : 0.0;
  }
  throw std::logic_error("mixing profile: unknown kind");
}

double k_phi(const MixingProfile& profile, std::size_t n, std::size_t q) {
  if (q == 0 || n <= q)
    throw std::invalid_argument("k_phi: requires n > q >= 1");
  double sum = 1.0;
  for (std::size_t r = 1; r <= n - q; ++r)
    sum += std::sqrt(profile.phi(r / q));
  return sum;
}

double k_phi_sup(const MixingProfile& profile, std::size_t q) {
  if (q == 0) throw std::invalid_argument("k_phi_sup: requires q >= 1");
  // Terms with floor(r/q) = 0 are r = 1..q-1; each block floor(r/q) = j >= 1
  // contributes q identical terms.
  double sum = 1.0 + static_cast<double>(q - 1) * std::sqrt(profile.phi(0));
  switch (profile.kind()) {
    case MixingProfile::Kind::explicit_seq:
    case MixingProfile::Kind::m_dependent: {
      for (std::size_t j = 1;; ++j) {
        const double v = profile.phi(j);
        if (v == 0.0) break;  // both kinds vanish identically past a point
        sum += static_cast<double>(q) * std::sqrt(v);
      }
      return sum;
    }
    case MixingProfile::Kind::geometric: {
      // Capped head (phi_j = 1), then an exact geometric tail of sqrt(phi).
      std::size_t j = 1;
      while (profile.phi(j) >= 1.0) {
        sum += static_cast<double>(q);
        ++j;
      }
      const double first = std::sqrt(profile.phi(j));
      if (first > 0.0) {
        const double ratio = std::sqrt(profile.phi(j + 1) / profile.phi(j));
        sum += static_cast<double>(q) * first / (1.0 - ratio);
      }
      return sum;
    }
  }
  throw std::logic_error("k_phi_sup: unknown kind");
}

double BoundInputs::support_cap() const {
  return eta * static_cast<double>(n - q) / (32.0 * Phi_q * (2.0 + b) * (2.0 + b));
}

void BoundInputs::validate() const {
  std::ostringstream msg;
  if (q == 0 || n <= q) {
    msg << "bound inputs: need n > q >= 1 (n = " << n << ", q = " << q << ")";
    throw std::invalid_argument(msg.str());
  }
  if (p == 0) throw std::invalid_argument("bound inputs: p must be positive");
  if (!(b > 0.0) || !std::isfinite(b))
    throw std::invalid_argument("bound inputs: b must be finite and positive");
  if (!(B > 0.0) || !std::isfinite(B))
    throw std::invalid_argument("bound inputs: B must be finite and positive");
  if (!(Phi_q >= 1.0) || !std::isfinite(Phi_q))
    throw std::invalid_argument(
        "bound inputs: Phi_q must be finite and >= 1 (it dominates K_phi >= 1)");
  if (!(eta > 0.0) || !(eta <= 16.0 / Phi_q)) {
    msg << "bound inputs: eta must lie in (0, 16/Phi_q] = (0, " << 16.0 / Phi_q
        << "]; got " << eta;
    throw std::invalid_argument(msg.str());
  }
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("bound inputs: epsilon must lie in (0, 1)");
  if (support_size > p)
    throw std::invalid_argument("bound inputs: support_size exceeds p");
  if (!(static_cast<double>(support_size) < support_cap())) {
    msg << "bound inputs: support cap violated — need |I| < eta (n-q) / (32 Phi_q (2+b)^2) = "
        << support_cap() << "; got |I| = " << support_size;
    throw std::invalid_argument(msg.str());
  }
}

double theorem_lambda(const BoundInputs& inputs) {
  inputs.validate();
  return inputs.eta * static_cast<double>(inputs.n - inputs.q) /
         (64.0 * inputs.Phi_q * (2.0 + inputs.b) * (2.0 + inputs.b) *
          inputs.B * inputs.B);
}

double oracle_remainder(const BoundInputs& inputs) {
  inputs.validate();
  const double n_eff = static_cast<double>(inputs.n - inputs.q);
  const double prefactor = 64.0 * inputs.Phi_q * (2.0 + inputs.b) *
                           (2.0 + inputs.b) * inputs.B * inputs.B /
                           (n_eff * inputs.eta);
  double bracket = 2.0 * std::log(2.0 / inputs.epsilon);
  if (inputs.support_size > 0) {
    const double size = static_cast<double>(inputs.support_size);
    const double log_arg = inputs.B * inputs.b * static_cast<double>(inputs.p) *
                           std::numbers::e / size *
                           std::sqrt(2.0 * inputs.eta * n_eff / size);
    bracket += size * (inputs.B + 2.0 * std::log(log_arg));
  }
  return prefactor * bracket;
}

double approximation_factor(const BoundInputs& inputs) {
  inputs.validate();
  return (2.0 + inputs.eta) / (2.0 - inputs.eta);
}

double sparse_corollary_bound(const BoundInputs& inputs, std::size_t p0) {
  BoundInputs at_p0 = inputs;
  at_p0.support_size = p0;
  at_p0.validate();  // the n-large-enough condition is exactly the support cap
  const double n_eff = static_cast<double>(at_p0.n - at_p0.q);
  const double amp = (2.0 + at_p0.b) * (2.0 + at_p0.b) * at_p0.B * at_p0.B;
  double brace = 2.0 * std::log(2.0 / at_p0.epsilon);
  if (p0 > 0) {
    // Same display, different arithmetic arrangement: the log is expanded
    // into its summands.
    const double size = static_cast<double>(p0);
    const double log_term = std::log(at_p0.B) + std::log(at_p0.b) +
                            std::log(static_cast<double>(at_p0.p)) + 1.0 -
                            std::log(size) +
                            0.5 * std::log(2.0 * at_p0.eta * n_eff / size);
    brace += size * (at_p0.B + 2.0 * log_term);
  }
  return 64.0 * at_p0.Phi_q * amp / (n_eff * at_p0.eta) * brace;
}

double kl_divergence(std::span<const double> rho, std::span<const double> pi) {
  if (rho.size() != pi.size())
    throw std::invalid_argument("kl_divergence: distributions differ in size");
  double sum = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i] < 0.0 || pi[i] < 0.0)
      throw std::invalid_argument("kl_divergence: negative probability");
    if (rho[i] == 0.0) continue;
    if (pi[i] == 0.0) return kPosInf;
    sum += rho[i] * std::log(rho[i] / pi[i]);
  }
  return sum;
}

DvResult dv_check(std::span<const double> pi, std::span<const double> h) {
  if (pi.size() != h.size())
    throw std::invalid_argument("dv_check: pi and h differ in size");
  if (pi.empty()) throw std::invalid_argument("dv_check: empty support");
  double mass = 0.0;
  for (double w : pi) {
    if (w < 0.0) throw std::invalid_argument("dv_check: negative probability");
    mass += w;
  }
  if (std::abs(mass - 1.0) > 1e-9)
    throw std::invalid_argument("dv_check: pi does not sum to 1");

  // lhs = log sum pi_i exp(h_i), stabilized.
  double max_term = kNegInf;
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (pi[i] > 0.0) max_term = std::max(max_term, h[i]);
  double z = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (pi[i] > 0.0) z += pi[i] * std::exp(h[i] - max_term);
  const double lhs = max_term + std::log(z);

  DvResult out;
  out.lhs = lhs;
  out.gibbs.assign(pi.size(), 0.0);
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (pi[i] > 0.0) out.gibbs[i] = pi[i] * std::exp(h[i] - lhs);

  // rhs evaluated at the Gibbs measure: gibbs[h] - KL(gibbs, pi).
  double expectation = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (out.gibbs[i] > 0.0) expectation += out.gibbs[i] * h[i];
  out.rhs = expectation - kl_divergence(out.gibbs, pi);
  return out;
}

std::size_t SamsonReport::violations() const {
  std::size_t count = 0;
  for (const auto& point : points) count += point.violation ? 1 : 0;
  return count;
}

SamsonReport samson_mc_check(const ProcessSpec& spec,
                             const std::function<double(double)>& f,
                             double f_bound, const MixingProfile& profile,
                             std::span<const double> lambda_grid,
                             std::size_t n_terms, std::size_t n_mc,
                             std::uint64_t seed,
                             std::optional<double> known_mean, int jobs) {
  if (!(f_bound > 0.0) || !std::isfinite(f_bound))
    throw std::invalid_argument("samson_mc_check: f_bound must be positive");
  if (n_terms == 0 || n_mc < 2)
    throw std::invalid_argument("samson_mc_check: need n_terms >= 1 and n_mc >= 2");

  // K for the Z-process of the lemma: 1 + sum_{r=1}^{N} sqrt(phi_r).
  const double k_value = k_phi(profile, n_terms + 1, 1);
  const double lambda_cap = 1.0 / (f_bound * k_value * k_value);
  for (double lambda : lambda_grid)
    if (!(lambda > 0.0) || lambda > lambda_cap + 1e-15) {
      std::ostringstream msg;
      msg << "samson_mc_check: lambda " << lambda
          << " outside the admissible range (0, 1/(M K^2)] = (0, " << lambda_cap
          << "]";
      throw std::invalid_argument(msg.str());
    }

  // Per-replication path sums; reduced serially in index order afterwards so
  // every jobs value yields bit-identical results.
  std::vector<double> path_sum(n_mc), path_sumsq(n_mc);
  parallel_for(n_mc, jobs, [&](std::size_t rep) {
    const TimeSeries path = simulate(spec, n_terms, derive_seed(seed, rep));
    double s = 0.0, ss = 0.0;
    for (double x : path.values()) {
      const double v = f(x);
      if (std::abs(v) > f_bound)
        throw std::invalid_argument("samson_mc_check: f exceeds its stated bound");
      s += v;
      ss += v * v;
    }
    path_sum[rep] = s;
    path_sumsq[rep] = ss;
  });

  const double total = static_cast<double>(n_terms) * static_cast<double>(n_mc);
  double sum_f = 0.0, sum_fsq = 0.0;
  for (std::size_t rep = 0; rep < n_mc; ++rep) {
    sum_f += path_sum[rep];
    sum_fsq += path_sumsq[rep];
  }
  SamsonReport report;
  report.k_value = k_value;
  report.n_terms = n_terms;
  report.n_mc = n_mc;
  report.mean_f = known_mean ? *known_mean : sum_f / total;
  report.sigma2 = known_mean
                      ? sum_fsq / total - (*known_mean) * (*known_mean)
                      : (sum_fsq - sum_f * sum_f / total) / (total - 1.0);

  const double expected_s = static_cast<double>(n_terms) * report.mean_f;
  report.points.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t rep = 0; rep < n_mc; ++rep) {
      const double w = std::exp(lambda * (path_sum[rep] - expected_s));
      m1 += w;
      m2 += w * w;
    }
    const double mean = m1 / static_cast<double>(n_mc);
    const double var =
        (m2 - m1 * m1 / static_cast<double>(n_mc)) / (static_cast<double>(n_mc) - 1.0);
    const double se_mean = std::sqrt(std::max(var, 0.0) / static_cast<double>(n_mc));

    SamsonPoint point;
    point.lambda = lambda;
    point.log_mgf = std::log(mean);
    point.se_log = se_mean / mean;  // delta method
    point.bound = 8.0 * k_value * static_cast<double>(n_terms) * report.sigma2 *
                  lambda * lambda;
    point.violation = point.log_mgf > point.bound + 3.0 * point.se_log;
    report.points.push_back(point);
  }
  return report;
}

}  // namespace tsagg
