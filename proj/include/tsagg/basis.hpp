#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tsagg/core.hpp"

namespace tsagg {

enum class BasisKind { ar_linear, sign_pattern, custom };

// A dictionary of p predictors g_j acting on a length-q window of past
// values ordered most recent first: window[0] = x_{t-1}, window[q-1] = x_{t-q}.
// The model prediction is f_theta(w) = sum_j theta_j g_j(w).
class PredictorBasis {
 public:
  using Fn = std::function<double(std::span<const double>)>;

  // g_j(w) = w[j] for j = 0..q-1, i.e. the linear AR(q) dictionary (p = q).
  static PredictorBasis ar_linear(std::size_t q);

  // One indicator per sign pattern of the window (p = 2^q).  Pattern index j
  // encodes the window signs bitwise, most recent coordinate in the lowest
  // bit, with bit set when the coordinate is > 0.  The indicators partition
  // the window space, so f_theta is a step function taking value theta_j on
  // cell j.  q is capped at 20 to keep p = 2^q addressable.
  static PredictorBasis sign_pattern(std::size_t q);

  // Caller-supplied predictors.
  static PredictorBasis custom(std::size_t q, std::vector<Fn> predictors);

  BasisKind kind() const { return kind_; }
  std::size_t size() const { return p_; }    // number of predictors p
  std::size_t window() const { return q_; }  // window length q

  // Evaluate g_j on a window (most recent first).  window.size() must be q.
  double evaluate(std::size_t j, std::span<const double> window) const;

 private:
  PredictorBasis(BasisKind kind, std::size_t q, std::size_t p,
                 std::vector<Fn> predictors);

  BasisKind kind_;
  std::size_t q_;
  std::size_t p_;
  std::vector<Fn> predictors_;  // custom only
};

PredictorBasis make_basis(BasisKind kind, std::size_t q);
BasisKind basis_kind_from_name(const std::string& name);

// f_theta(w) = sum over the support of theta of theta_j g_j(w).
// theta.dim() must equal basis.size() and window.size() must equal
// basis.window().
double predict(const PredictorBasis& basis, const SparseParam& theta,
               std::span<const double> window);

}  // namespace tsagg
