#include "tsagg/baselines.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tsagg {

namespace {

// Residual sum of squares of a fitted predictor over i = q_align+1..n.
double rss_over_range(const TimeSeries& series, const ArFit& fit,
                      std::size_t q_align) {
  const auto& x = series.values();
  const std::size_t n = x.size();
  double rss = 0.0;
  for (std::size_t i = q_align; i < n; ++i) {
    double pred = fit.intercept;
    for (std::size_t j = 0; j < fit.order; ++j) pred += fit.coeffs[j] * x[i - 1 - j];
    const double r = x[i] - pred;
    rss += r * r;
  }
  return rss;
}

}  // namespace

ArFit ols_ar_fit(const TimeSeries& series, std::size_t order, std::size_t q_align) {
  const std::size_t n = series.size();
  if (q_align < order)
    throw std::invalid_argument("ols_ar_fit: q_align must be >= order");
  if (n <= q_align)
    throw std::invalid_argument("ols_ar_fit: series shorter than alignment window");
  const std::size_t rows = n - q_align;
  const std::size_t cols = order + 1;  // intercept + lags
  if (rows < cols)
    throw std::invalid_argument("ols_ar_fit: not enough observations for the design");

  const auto& x = series.values();
  Eigen::MatrixXd design(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  Eigen::VectorXd target(static_cast<Eigen::Index>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t i = q_align + r;
    design(static_cast<Eigen::Index>(r), 0) = 1.0;
    for (std::size_t j = 0; j < order; ++j)
      design(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j + 1)) = x[i - 1 - j];
    target(static_cast<Eigen::Index>(r)) = x[i];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < static_cast<Eigen::Index>(cols))
    throw std::invalid_argument("ols_ar_fit: rank-deficient design matrix");
  const Eigen::VectorXd beta = qr.solve(target);

  ArFit fit;
  fit.order = order;
  fit.intercept = beta(0);
  fit.coeffs.resize(order);
  for (std::size_t j = 0; j < order; ++j) fit.coeffs[j] = beta(static_cast<Eigen::Index>(j + 1));
  fit.n_eff = rows;
  fit.rss = (target - design * beta).squaredNorm();
  return fit;
}

ArFit aic_select(const TimeSeries& series, std::size_t max_order) {
  ArFit best;
  double best_aic = std::numeric_limits<double>::infinity();
  for (std::size_t order = 0; order <= max_order; ++order) {
    ArFit fit = ols_ar_fit(series, order, max_order);
    const double mean_sq = fit.rss / static_cast<double>(fit.n_eff);
    // Guard the log for an exact fit; an RSS of zero can only improve.
    const double aic =
        mean_sq > 0.0
            ? static_cast<double>(fit.n_eff) * std::log(mean_sq) +
                  2.0 * (static_cast<double>(order) + 1.0)
            : -std::numeric_limits<double>::infinity();
    if (aic < best_aic) {
      best_aic = aic;
      best = std::move(fit);
    }
  }
  return best;
}

double predict_ar(const ArFit& fit, std::span<const double> window) {
  if (window.size() < fit.order)
    throw std::invalid_argument("predict_ar: window shorter than fit order");
  double pred = fit.intercept;
  for (std::size_t j = 0; j < fit.order; ++j) pred += fit.coeffs[j] * window[j];
  return pred;
}

YwFit yw_ar_fit(const TimeSeries& series, std::size_t order, std::size_t q_align) {
  const std::size_t n = series.size();
  if (n <= order + 1)
    throw std::invalid_argument("yw_ar_fit: series too short for this order");
  if (q_align < order || n <= q_align)
    throw std::invalid_argument("yw_ar_fit: bad alignment window");

  const auto& x = series.values();
  const double mean = series.mean();

  // Autocovariances with divisor n.
  std::vector<double> acov(order + 1, 0.0);
  for (std::size_t lag = 0; lag <= order; ++lag) {
    double s = 0.0;
    for (std::size_t i = lag; i < n; ++i) s += (x[i] - mean) * (x[i - lag] - mean);
    acov[lag] = s / static_cast<double>(n);
  }

  YwFit out;
  out.fit.order = order;
  out.fit.coeffs.assign(order, 0.0);

  double var_pred = acov[0];
  if (order > 0) {
    if (acov[0] <= 0.0)
      throw std::invalid_argument("yw_ar_fit: degenerate series (zero variance)");
    // Levinson-Durbin recursion on the Toeplitz system.
    std::vector<double> phi(order, 0.0), prev(order, 0.0);
    for (std::size_t m = 1; m <= order; ++m) {
      double acc = acov[m];
      for (std::size_t j = 1; j < m; ++j) acc -= prev[j - 1] * acov[m - j];
      const double reflection = acc / var_pred;
      phi[m - 1] = reflection;
      for (std::size_t j = 1; j < m; ++j)
        phi[j - 1] = prev[j - 1] - reflection * prev[m - 1 - j];
      var_pred *= (1.0 - reflection * reflection);
      if (var_pred <= 0.0)
        throw std::invalid_argument("yw_ar_fit: Levinson recursion broke down");
      std::copy(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(m), prev.begin());
    }
    out.fit.coeffs = phi;
  }

  // Degrees-of-freedom correction on the innovation variance estimate.
  out.var_pred = var_pred * static_cast<double>(n) /
                 static_cast<double>(n - order - 1);

  double csum = 0.0;
  for (double c : out.fit.coeffs) csum += c;
  out.fit.intercept = mean * (1.0 - csum);
  out.fit.n_eff = n - q_align;
  out.fit.rss = rss_over_range(series, out.fit, q_align);
  return out;
}

YwFit yw_aic_select(const TimeSeries& series, std::size_t max_order,
                    std::size_t q_align) {
  YwFit best;
  double best_aic = std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(series.size());
  for (std::size_t order = 0; order <= max_order; ++order) {
    YwFit candidate = yw_ar_fit(series, order, q_align);
    const double aic = candidate.var_pred > 0.0
                           ? n * std::log(candidate.var_pred) +
                                 2.0 * static_cast<double>(order)
                           : -std::numeric_limits<double>::infinity();
    if (aic < best_aic) {
      best_aic = aic;
      best = std::move(candidate);
    }
  }
  return best;
}

}  // namespace tsagg
