#include "tsagg/basis.hpp"

#include <stdexcept>

namespace tsagg {

namespace {
constexpr std::size_t kSignPatternMaxQ = 20;
}

PredictorBasis::PredictorBasis(BasisKind kind, std::size_t q, std::size_t p,
                               std::vector<Fn> predictors)
    : kind_(kind), q_(q), p_(p), predictors_(std::move(predictors)) {}

PredictorBasis PredictorBasis::ar_linear(std::size_t q) {
  if (q == 0) throw std::invalid_argument("ar_linear: q must be positive");
  return PredictorBasis(BasisKind::ar_linear, q, q, {});
}

PredictorBasis PredictorBasis::sign_pattern(std::size_t q) {
  if (q == 0) throw std::invalid_argument("sign_pattern: q must be positive");
  if (q > kSignPatternMaxQ)
    throw std::invalid_argument("sign_pattern: q exceeds the 2^q addressability cap (20)");
  return PredictorBasis(BasisKind::sign_pattern, q, std::size_t{1} << q, {});
}

PredictorBasis PredictorBasis::custom(std::size_t q, std::vector<Fn> predictors) {
  if (q == 0) throw std::invalid_argument("custom basis: q must be positive");
  if (predictors.empty())
    throw std::invalid_argument("custom basis: needs at least one predictor");
  const std::size_t p = predictors.size();
  return PredictorBasis(BasisKind::custom, q, p, std::move(predictors));
}

double PredictorBasis::evaluate(std::size_t j, std::span<const double> window) const {
  if (j >= p_) throw std::invalid_argument("basis: predictor index out of range");
  if (window.size() != q_) throw std::invalid_argument("basis: window length mismatch");
  switch (kind_) {
    case BasisKind::ar_linear:
      return window[j];
    case BasisKind::sign_pattern: {
      // Bit d of j must match the sign of window[d] (> 0 sets the bit).
      for (std::size_t d = 0; d < q_; ++d) {
        const bool positive = window[d] > 0.0;
        if (positive != (((j >> d) & 1u) != 0)) return 0.0;
      }
      return 1.0;
    }
    case BasisKind::custom:
      return predictors_[j](window);
  }
  throw std::logic_error("basis: unknown kind");
}

PredictorBasis make_basis(BasisKind kind, std::size_t q) {
  switch (kind) {
    case BasisKind::ar_linear:
      return PredictorBasis::ar_linear(q);
    case BasisKind::sign_pattern:
      return PredictorBasis::sign_pattern(q);
    case BasisKind::custom:
      throw std::invalid_argument("make_basis: custom bases need explicit predictors");
  }
  throw std::logic_error("make_basis: unknown kind");
}

BasisKind basis_kind_from_name(const std::string& name) {
  if (name == "ar_linear") return BasisKind::ar_linear;
  if (name == "sign_pattern") return BasisKind::sign_pattern;
  if (name == "custom") return BasisKind::custom;
  throw std::invalid_argument("unknown basis kind: " + name);
}

double predict(const PredictorBasis& basis, const SparseParam& theta,
               std::span<const double> window) {
  if (theta.dim() != basis.size())
    throw std::invalid_argument("predict: parameter dimension does not match basis");
  if (window.size() != basis.window())
    throw std::invalid_argument("predict: window length mismatch");
  const auto& support = theta.support();
  const auto& coeffs = theta.coeffs();
  double out = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i)
    out += coeffs[i] * basis.evaluate(support[i], window);
  return out;
}

}  // namespace tsagg
