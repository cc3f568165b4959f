#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tsagg/core.hpp"
#include "tsagg/rng.hpp"

namespace tsagg {

// Innovation distribution for the simulators.  Both are centered; variance
// is a^2/3 for uniform on [-a, a] and sigma^2 for the Gaussian.
struct InnovationSpec {
  enum class Kind { uniform, gaussian };

  Kind kind = Kind::uniform;
  double a = 0.70;      // uniform half-width (a = 0 gives the degenerate
                        // zero-noise case used for exact-recovery checks)
  double sigma = 0.4;   // gaussian standard deviation

  static InnovationSpec uniform(double a);
  static InnovationSpec gaussian(double sigma);

  double variance() const;
  double draw(Rng& rng) const;
  std::string name() const;
};

// A stationary process recipe.  `coeffs` are the a_j (AR) or b_j (MA)
// weights on lags 1..d; nonlinear_cos_sin ignores them and uses
// X_t = cos(X_{t-1}) sin(X_{t-2}) + e_t.
struct ProcessSpec {
  enum class Kind { ar, ma, nonlinear_cos_sin };

  Kind kind = Kind::ar;
  std::vector<double> coeffs;
  InnovationSpec innovation;
  std::size_t burn_in = 1000;  // pre-sample steps discarded from zero state

  static ProcessSpec ar(std::vector<double> coeffs, InnovationSpec innovation);
  static ProcessSpec ma(std::vector<double> coeffs, InnovationSpec innovation);
  static ProcessSpec nonlinear_cos_sin(InnovationSpec innovation);
};

enum class Stationarity { stationary, non_stationary };

// Checks whether the AR polynomial 1 - sum_j a_j z^j has all roots strictly
// outside the unit circle, via the companion-matrix spectrum.  A margin of
// 1e-9 on the spectral radius separates the verdicts, so unit-root cases
// land on the non-stationary side.
Stationarity stationarity_check(std::span<const double> ar_coeffs);

// Draws a length-`length` sample path.  Every recursion starts from the
// zero state (zero lagged values, zero innovation history) and the first
// `burn_in` steps are discarded.  AR specs are rejected unless stationary.
TimeSeries simulate(const ProcessSpec& spec, std::size_t length,
                    std::uint64_t seed);

}  // namespace tsagg
