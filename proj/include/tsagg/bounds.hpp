#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tsagg/simulate.hpp"

namespace tsagg {

// A phi-mixing coefficient profile phi_r, r >= 1, with a declared
// convention value for phi_0 (the definition degenerates at r = 0; the
// default takes the universal bound 1).  All coefficients live in [0, 1].
class MixingProfile {
 public:
  enum class Kind { explicit_seq, geometric, m_dependent };

  // phi_r given for r = 1..values.size(), zero beyond; must be
  // non-increasing.
  static MixingProfile explicit_profile(std::vector<double> values,
                                        double phi0 = 1.0);
  // phi_r = min(1, c rho^r), 0 <= c, 0 < rho < 1.
  static MixingProfile geometric(double c, double rho, double phi0 = 1.0);
  // phi_r = 1 for r <= m, 0 beyond (an m-dependent process forgets
  // everything after m steps; before that only the universal cap is known).
  static MixingProfile m_dependent(std::size_t m, double phi0 = 1.0);
  // m_dependent(0): independent observations.
  static MixingProfile iid();

  Kind kind() const { return kind_; }
  double phi(std::size_t r) const;

 private:
  MixingProfile(Kind kind, std::vector<double> values, double c, double rho,
                std::size_t m, double phi0);

  Kind kind_;
  std::vector<double> values_;
  double c_ = 0.0, rho_ = 0.0;
  std::size_t m_ = 0;
  double phi0_ = 1.0;
};

// The mixing aggregate K_phi^(n)(q) = 1 + sum_{r=1}^{n-q} sqrt(phi_{floor(r/q)}).
// Indices with floor(r/q) = 0 load the phi0 convention.  Requires n > q >= 1.
double k_phi(const MixingProfile& profile, std::size_t n, std::size_t q);

// sup over n of k_phi(profile, n, q), evaluated in closed form:
// 1 + (q-1) sqrt(phi0) + q sum_{j>=1} sqrt(phi_j), with the geometric tail
// summed analytically.  This is the natural choice of Phi(q).
double k_phi_sup(const MixingProfile& profile, std::size_t q);

// Inputs to the oracle-inequality calculator.
struct BoundInputs {
  std::size_t n = 0;            // sample size
  std::size_t q = 0;            // window length
  std::size_t p = 0;            // dictionary size
  double b = 0.0;               // l1 amplitude, ||theta*||_1 < b
  double B = 0.0;               // amplitude bound on the observations
  double Phi_q = 0.0;           // upper bound on K_phi^(n)(q), any n
  double eta = 0.0;             // temperature knob, in (0, 16/Phi_q]
  double epsilon = 0.0;         // confidence level, in (0, 1)
  std::size_t support_size = 0; // |I| of the competitor

  // Largest admissible support mass: |I| < eta (n-q) / (32 Phi_q (2+b)^2).
  double support_cap() const;
  // Throws invalid_argument naming the violated inequality.
  void validate() const;
};

// lambda = eta (n-q) / (64 Phi_q (2+b)^2 B^2).
double theorem_lambda(const BoundInputs& inputs);

// The additive remainder of the oracle inequality at support size |I|:
// 64 Phi_q (2+b)^2 B^2 / ((n-q) eta) *
//   [ |I| (B + 2 log( (B b p e / |I|) sqrt(2 eta (n-q) / |I|) )) + 2 log(2/eps) ].
// The |I| = 0 competitor drops the bracketed first term.
double oracle_remainder(const BoundInputs& inputs);

// Leading factor (2+eta)/(2-eta) multiplying the approximation term.
double approximation_factor(const BoundInputs& inputs);

// The sparsity-rate display specialized to a p0-sparse optimum, written out
// independently of oracle_remainder; equal to it at support_size = p0.
double sparse_corollary_bound(const BoundInputs& inputs, std::size_t p0);

// Kullback divergence between two finite distributions on the same support
// universe: sum rho_i log(rho_i / pi_i), with 0 log 0 = 0 and +infinity as
// soon as rho charges a pi-null point.
double kl_divergence(std::span<const double> rho, std::span<const double> pi);

struct DvResult {
  double lhs = 0.0;           // log pi[exp h]
  double rhs = 0.0;           // sup_rho (rho[h] - KL(rho, pi)), at the Gibbs measure
  std::vector<double> gibbs;  // the maximizer pi{h}
};

// Evaluates both sides of the Donsker-Varadhan variational formula on a
// finite space; they agree identically (up to rounding).
DvResult dv_check(std::span<const double> pi, std::span<const double> h);

struct SamsonPoint {
  double lambda = 0.0;
  double log_mgf = 0.0;  // Monte Carlo estimate of log E exp(lambda (S - ES))
  double se_log = 0.0;   // delta-method standard error of log_mgf
  double bound = 0.0;    // 8 K N sigma^2 lambda^2
  bool violation = false;  // log_mgf exceeds bound by more than 3 se_log
};

struct SamsonReport {
  std::vector<SamsonPoint> points;
  double k_value = 0.0;  // K = 1 + sum_{r=1}^N sqrt(phi_r)
  double sigma2 = 0.0;   // marginal variance of f (pooled estimate)
  double mean_f = 0.0;   // marginal mean of f used for centering
  std::size_t n_terms = 0;
  std::size_t n_mc = 0;
  std::size_t violations() const;
};

// Monte Carlo check of the Bernstein-type mgf bound for sums of a bounded
// function over a mixing process: draws n_mc independent length-N paths,
// estimates log E exp(lambda (S - E S)) at each grid point and compares it
// to 8 K N sigma^2 lambda^2.  f must map into [-f_bound, f_bound] and every
// lambda must lie in (0, 1/(f_bound K^2)].  Replications parallelize over
// substreams; results are identical for every jobs value.  known_mean, when
// given, replaces the pooled estimate of E f in the centering.
SamsonReport samson_mc_check(const ProcessSpec& spec,
                             const std::function<double(double)>& f,
                             double f_bound, const MixingProfile& profile,
                             std::span<const double> lambda_grid,
                             std::size_t n_terms, std::size_t n_mc,
                             std::uint64_t seed,
                             std::optional<double> known_mean = std::nullopt,
                             int jobs = 0);

}  // namespace tsagg
