#include "tsagg/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tsagg/basis.hpp"

namespace tsagg {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("TimeSeries: empty series");
  double sum = 0.0;
  double max_abs = 0.0;
  for (double x : values_) {
    if (!std::isfinite(x))
      throw std::invalid_argument("TimeSeries: non-finite value");
    sum += x;
    max_abs = std::max(max_abs, std::abs(x));
  }
  mean_ = sum / static_cast<double>(values_.size());
  double ss = 0.0;
  for (double x : values_) ss += (x - mean_) * (x - mean_);
  variance_ = ss / static_cast<double>(values_.size());
  amplitude_bound_ = max_abs;
}

SparseParam::SparseParam(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("SparseParam: dim must be positive");
}

SparseParam::SparseParam(std::size_t dim, std::vector<std::size_t> support,
                         std::vector<double> coeffs)
    : dim_(dim), support_(std::move(support)), coeffs_(std::move(coeffs)) {
  if (dim == 0) throw std::invalid_argument("SparseParam: dim must be positive");
  if (support_.size() != coeffs_.size())
    throw std::invalid_argument("SparseParam: support/coeff length mismatch");
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i] >= dim_)
      throw std::invalid_argument("SparseParam: index out of range");
    if (i > 0 && support_[i] <= support_[i - 1])
      throw std::invalid_argument("SparseParam: support must be strictly increasing");
    if (coeffs_[i] == 0.0 || !std::isfinite(coeffs_[i]))
      throw std::invalid_argument("SparseParam: coefficients must be nonzero and finite");
  }
}

SparseParam SparseParam::from_dense(std::size_t dim,
                                    std::span<const double> values) {
  if (values.size() != dim)
    throw std::invalid_argument("SparseParam::from_dense: length mismatch");
  std::vector<std::size_t> support;
  std::vector<double> coeffs;
  for (std::size_t j = 0; j < dim; ++j) {
    if (values[j] != 0.0) {
      support.push_back(j);
      coeffs.push_back(values[j]);
    }
  }
  return SparseParam(dim, std::move(support), std::move(coeffs));
}

double SparseParam::at(std::size_t j) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), j);
  if (it == support_.end() || *it != j) return 0.0;
  return coeffs_[static_cast<std::size_t>(it - support_.begin())];
}

double SparseParam::l1_norm() const {
  double s = 0.0;
  for (double c : coeffs_) s += std::abs(c);
  return s;
}

std::vector<double> SparseParam::to_dense() const {
  std::vector<double> out(dim_, 0.0);
  for (std::size_t i = 0; i < support_.size(); ++i) out[support_[i]] = coeffs_[i];
  return out;
}

void SparseParam::insert(std::size_t j, double value) {
  if (j >= dim_) throw std::invalid_argument("SparseParam::insert: index out of range");
  if (value == 0.0 || !std::isfinite(value))
    throw std::invalid_argument("SparseParam::insert: value must be nonzero and finite");
  auto it = std::lower_bound(support_.begin(), support_.end(), j);
  if (it != support_.end() && *it == j)
    throw std::invalid_argument("SparseParam::insert: index already in support");
  const std::size_t pos = static_cast<std::size_t>(it - support_.begin());
  support_.insert(it, j);
  coeffs_.insert(coeffs_.begin() + static_cast<std::ptrdiff_t>(pos), value);
}

void SparseParam::erase_position(std::size_t pos) {
  if (pos >= support_.size())
    throw std::invalid_argument("SparseParam::erase_position: bad position");
  support_.erase(support_.begin() + static_cast<std::ptrdiff_t>(pos));
  coeffs_.erase(coeffs_.begin() + static_cast<std::ptrdiff_t>(pos));
}

void SparseParam::set_coeff_at_position(std::size_t pos, double value) {
  if (pos >= support_.size())
    throw std::invalid_argument("SparseParam::set_coeff_at_position: bad position");
  if (value == 0.0 || !std::isfinite(value))
    throw std::invalid_argument("SparseParam::set_coeff_at_position: value must be nonzero and finite");
  coeffs_[pos] = value;
}

namespace {

RiskReport risk_over(const TimeSeries& series, const PredictorBasis& basis,
                     const SparseParam& theta, std::size_t q) {
  const std::size_t n = series.size();
  if (q == 0) throw std::invalid_argument("risk: window length q must be positive");
  if (n <= q) throw std::invalid_argument("risk: series shorter than window");
  if (theta.dim() != basis.size())
    throw std::invalid_argument("risk: parameter dimension does not match basis");
  if (basis.window() != q)
    throw std::invalid_argument("risk: basis window does not match q");

  const std::vector<double>& x = series.values();
  std::vector<double> window(q);
  double sum = 0.0;
  for (std::size_t i = q; i < n; ++i) {
    for (std::size_t d = 0; d < q; ++d) window[d] = x[i - 1 - d];
    const double resid = x[i] - predict(basis, theta, window);
    sum += resid * resid;
  }
  const std::size_t terms = n - q;
  return RiskReport{sum / static_cast<double>(terms), terms};
}

}  // namespace

RiskReport empirical_risk(const TimeSeries& series, const PredictorBasis& basis,
                          const SparseParam& theta, std::size_t q) {
  return risk_over(series, basis, theta, q);
}

RiskReport holdout_risk(const SparseParam& theta, const PredictorBasis& basis,
                        const TimeSeries& test_series, std::size_t q) {
  return risk_over(test_series, basis, theta, q);
}

}  // namespace tsagg
