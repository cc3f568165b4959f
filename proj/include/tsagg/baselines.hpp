#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tsagg/core.hpp"

namespace tsagg {

// A fitted AR(order) predictor x_hat_t = intercept + sum_j coeffs[j] x_{t-j}.
struct ArFit {
  std::size_t order = 0;
  double intercept = 0.0;
  std::vector<double> coeffs;  // lags 1..order
  double rss = 0.0;            // residual sum of squares over the fit range
  std::size_t n_eff = 0;       // number of residuals in the fit range
};

// Conditional least squares with intercept.  Residuals run over
// i = q_align+1..n regardless of order, so fits of different orders are
// computed on the same sample and their RSS values are comparable.
// Requires order <= q_align < n; throws on a rank-deficient design.
ArFit ols_ar_fit(const TimeSeries& series, std::size_t order, std::size_t q_align);

// Fits orders 0..max_order by ols_ar_fit and picks the AIC minimizer with
// AIC = n_eff log(rss / n_eff) + 2 (order + 1); ties go to the smaller
// order.  q_align = max_order aligns all candidate fits.
ArFit aic_select(const TimeSeries& series, std::size_t max_order);

// One-step prediction from a window ordered most recent first
// (window[0] = x_{t-1}).  Needs window.size() >= fit.order.
double predict_ar(const ArFit& fit, std::span<const double> window);

// Yule-Walker estimate of a demeaned AR(order): autocovariances with
// divisor n feed the Toeplitz system, solved by Levinson-Durbin; the
// intercept is mean * (1 - sum coeffs).  The innovation-variance estimate
// var_pred carries the n/(n - order - 1) degrees-of-freedom correction.
// rss/n_eff report residuals over i = q_align+1..n for comparability.
struct YwFit {
  ArFit fit;
  double var_pred = 0.0;
};
YwFit yw_ar_fit(const TimeSeries& series, std::size_t order, std::size_t q_align);

// Order selection on the Yule-Walker path: minimizes
// AIC = n log(var_pred) + 2 order over orders 0..max_order (ties to the
// smaller order).
YwFit yw_aic_select(const TimeSeries& series, std::size_t max_order,
                    std::size_t q_align);

}  // namespace tsagg
