#include "tsagg/simulate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace tsagg {

InnovationSpec InnovationSpec::uniform(double a) {
  if (a < 0.0 || !std::isfinite(a))
    throw std::invalid_argument("innovation: uniform half-width must be >= 0");
  InnovationSpec s;
  s.kind = Kind::uniform;
  s.a = a;
  return s;
}

InnovationSpec InnovationSpec::gaussian(double sigma) {
  if (sigma <= 0.0 || !std::isfinite(sigma))
    throw std::invalid_argument("innovation: gaussian sigma must be positive");
  InnovationSpec s;
  s.kind = Kind::gaussian;
  s.sigma = sigma;
  return s;
}

double InnovationSpec::variance() const {
  return kind == Kind::uniform ? a * a / 3.0 : sigma * sigma;
}

double InnovationSpec::draw(Rng& rng) const {
  if (kind == Kind::uniform) {
    if (a == 0.0) return 0.0;
    return rng.uniform(-a, a);
  }
  return rng.normal(0.0, sigma);
}

std::string InnovationSpec::name() const {
  return kind == Kind::uniform ? "uniform" : "gaussian";
}

ProcessSpec ProcessSpec::ar(std::vector<double> coeffs, InnovationSpec innovation) {
  if (coeffs.empty()) throw std::invalid_argument("ar: needs at least one lag");
  ProcessSpec s;
  s.kind = Kind::ar;
  s.coeffs = std::move(coeffs);
  s.innovation = innovation;
  return s;
}

ProcessSpec ProcessSpec::ma(std::vector<double> coeffs, InnovationSpec innovation) {
  if (coeffs.empty()) throw std::invalid_argument("ma: needs at least one lag");
  ProcessSpec s;
  s.kind = Kind::ma;
  s.coeffs = std::move(coeffs);
  s.innovation = innovation;
  return s;
}

ProcessSpec ProcessSpec::nonlinear_cos_sin(InnovationSpec innovation) {
  ProcessSpec s;
  s.kind = Kind::nonlinear_cos_sin;
  s.innovation = innovation;
  return s;
}

Stationarity stationarity_check(std::span<const double> ar_coeffs) {
  std::size_t d = ar_coeffs.size();
  while (d > 0 && ar_coeffs[d - 1] == 0.0) --d;  // trailing zero lags are inert
  if (d == 0) return Stationarity::stationary;
  for (std::size_t j = 0; j < d; ++j)
    if (!std::isfinite(ar_coeffs[j]))
      throw std::invalid_argument("stationarity_check: non-finite coefficient");

  // Companion matrix of the recursion; its eigenvalues are the inverse roots
  // of the characteristic polynomial 1 - sum a_j z^j.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j)
    companion(0, static_cast<Eigen::Index>(j)) = ar_coeffs[j];
  for (std::size_t j = 1; j < d; ++j)
    companion(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j - 1)) = 1.0;

  const auto eigenvalues = companion.eigenvalues();
  constexpr double kMargin = 1e-9;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (std::abs(eigenvalues[i]) >= 1.0 - kMargin) return Stationarity::non_stationary;
  return Stationarity::stationary;
}

TimeSeries simulate(const ProcessSpec& spec, std::size_t length,
                    std::uint64_t seed) {
  if (length == 0) throw std::invalid_argument("simulate: length must be positive");
  Rng rng(seed);
  const std::size_t total = spec.burn_in + length;
  std::vector<double> out;
  out.reserve(length);

  switch (spec.kind) {
    case ProcessSpec::Kind::ar: {
      if (stationarity_check(spec.coeffs) != Stationarity::stationary)
        throw std::invalid_argument("simulate: AR coefficients are not stationary");
      const std::size_t d = spec.coeffs.size();
      std::vector<double> lags(d, 0.0);  // lags[j] = X_{t-1-j}
      for (std::size_t t = 0; t < total; ++t) {
        double x = spec.innovation.draw(rng);
        for (std::size_t j = 0; j < d; ++j) x += spec.coeffs[j] * lags[j];
        for (std::size_t j = d; j-- > 1;) lags[j] = lags[j - 1];
        lags[0] = x;
        if (t >= spec.burn_in) out.push_back(x);
      }
      break;
    }
    case ProcessSpec::Kind::ma: {
      const std::size_t d = spec.coeffs.size();
      std::vector<double> eps(d, 0.0);  // eps[j] = e_{t-1-j}
      for (std::size_t t = 0; t < total; ++t) {
        const double e = spec.innovation.draw(rng);
        double x = e;
        for (std::size_t j = 0; j < d; ++j) x += spec.coeffs[j] * eps[j];
        for (std::size_t j = d; j-- > 1;) eps[j] = eps[j - 1];
        eps[0] = e;
        if (t >= spec.burn_in) out.push_back(x);
      }
      break;
    }
    case ProcessSpec::Kind::nonlinear_cos_sin: {
      double x1 = 0.0, x2 = 0.0;  // X_{t-1}, X_{t-2}
      for (std::size_t t = 0; t < total; ++t) {
        const double x = std::cos(x1) * std::sin(x2) + spec.innovation.draw(rng);
        x2 = x1;
        x1 = x;
        if (t >= spec.burn_in) out.push_back(x);
      }
      break;
    }
  }
  return TimeSeries(std::move(out));
}

}  // namespace tsagg
