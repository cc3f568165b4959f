#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tsagg {

class PredictorBasis;  // basis.hpp

// An observed scalar series x_1..x_n (stored 0-based).  Immutable after
// construction; summary statistics are computed once.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  double mean() const { return mean_; }
  // Population variance (divisor n).
  double variance() const { return variance_; }
  // max_i |x_i|; empirical stand-in for the boundedness constant.
  double amplitude_bound() const { return amplitude_bound_; }

 private:
  std::vector<double> values_;
  double mean_;
  double variance_;
  double amplitude_bound_;
};

// A coefficient vector in R^p stored by support: indices are strictly
// increasing, coefficients are nonzero and aligned with them.  The all-zero
// vector has an empty support.
class SparseParam {
 public:
  explicit SparseParam(std::size_t dim);
  SparseParam(std::size_t dim, std::vector<std::size_t> support,
              std::vector<double> coeffs);
  static SparseParam from_dense(std::size_t dim, std::span<const double> values);

  std::size_t dim() const { return dim_; }
  const std::vector<std::size_t>& support() const { return support_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  std::size_t support_size() const { return support_.size(); }

  // Coefficient at index j (zero off support).
  double at(std::size_t j) const;
  double l1_norm() const;
  std::vector<double> to_dense() const;

  // Support manipulation used by the sampler's moves.  insert requires j to
  // be absent and value nonzero; erase/set_coeff address a position in the
  // support array, and setting a coefficient to zero is rejected (use erase).
  void insert(std::size_t j, double value);
  void erase_position(std::size_t pos);
  void set_coeff_at_position(std::size_t pos, double value);

  bool operator==(const SparseParam& other) const = default;

 private:
  std::size_t dim_;
  std::vector<std::size_t> support_;
  std::vector<double> coeffs_;
};

struct RiskReport {
  double risk = 0.0;        // mean squared one-step prediction error
  std::size_t n_terms = 0;  // number of squared residuals averaged
};

// In-sample risk: mean over i = q+1..n of (x_i - f_theta(window_i))^2 where
// window_i = (x_{i-1}, ..., x_{i-q}), most recent first.  Requires n > q.
RiskReport empirical_risk(const TimeSeries& series, const PredictorBasis& basis,
                          const SparseParam& theta, std::size_t q);

// Same functional evaluated on a held-out series; estimates out-of-sample
// prediction risk.
RiskReport holdout_risk(const SparseParam& theta, const PredictorBasis& basis,
                        const TimeSeries& test_series, std::size_t q);

}  // namespace tsagg
