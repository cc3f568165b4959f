#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tsagg/basis.hpp"
#include "tsagg/core.hpp"

using namespace tsagg;

TEST_CASE("TimeSeries summary statistics") {
  TimeSeries s({1.0, 2.0, 3.0, 4.0});
  CHECK(s.size() == 4);
  CHECK(s.mean() == doctest::Approx(2.5).epsilon(1e-15));
  // population variance: mean of squared deviations
  CHECK(s.variance() == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(s.amplitude_bound() == doctest::Approx(4.0));
  CHECK(s[2] == 3.0);

  TimeSeries neg({-5.0, 1.0});
  CHECK(neg.amplitude_bound() == doctest::Approx(5.0));
}

TEST_CASE("TimeSeries rejects bad input") {
  CHECK_THROWS_AS(TimeSeries(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(TimeSeries({1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(TimeSeries({std::numeric_limits<double>::infinity()}),
                  std::invalid_argument);
}

TEST_CASE("SparseParam construction and access") {
  SparseParam zero(5);
  CHECK(zero.dim() == 5);
  CHECK(zero.support_size() == 0);
  CHECK(zero.l1_norm() == 0.0);
  CHECK(zero.at(3) == 0.0);

  SparseParam theta(4, {1, 3}, {1.5, -2.0});
  CHECK(theta.at(0) == 0.0);
  CHECK(theta.at(1) == 1.5);
  CHECK(theta.at(3) == -2.0);
  CHECK(theta.l1_norm() == doctest::Approx(3.5));
  CHECK(theta.to_dense() == std::vector<double>{0.0, 1.5, 0.0, -2.0});

  auto dense = SparseParam::from_dense(4, std::vector<double>{0.0, 1.5, 0.0, -2.0});
  CHECK(dense == theta);
}

TEST_CASE("SparseParam validation") {
  CHECK_THROWS_AS(SparseParam(3, {2, 1}, {1.0, 1.0}), std::invalid_argument);  // unsorted
  CHECK_THROWS_AS(SparseParam(3, {1, 1}, {1.0, 1.0}), std::invalid_argument);  // duplicate
  CHECK_THROWS_AS(SparseParam(3, {3}, {1.0}), std::invalid_argument);          // out of range
  CHECK_THROWS_AS(SparseParam(3, {0}, {0.0}), std::invalid_argument);          // zero coeff
  CHECK_THROWS_AS(SparseParam(3, {0}, {std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(SparseParam(3, {0, 1}, {1.0}), std::invalid_argument);       // length mismatch
}

TEST_CASE("SparseParam support editing") {
  SparseParam theta(5, {2}, {1.0});
  theta.insert(0, -0.5);
  CHECK(theta.support() == std::vector<std::size_t>{0, 2});
  CHECK(theta.coeffs() == std::vector<double>{-0.5, 1.0});
  theta.set_coeff_at_position(1, 2.5);
  CHECK(theta.at(2) == 2.5);
  theta.erase_position(0);
  CHECK(theta.support() == std::vector<std::size_t>{2});

  CHECK_THROWS_AS(theta.insert(2, 1.0), std::invalid_argument);  // already present
  CHECK_THROWS_AS(theta.insert(0, 0.0), std::invalid_argument);  // zero value
  CHECK_THROWS_AS(theta.set_coeff_at_position(0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(theta.erase_position(7), std::invalid_argument);
}

TEST_CASE("empirical risk hand values") {
  TimeSeries s({1.0, 2.0, 3.0, 4.0});
  auto basis = PredictorBasis::ar_linear(1);

  // theta = (1): predictions are the previous value, residuals all 1.
  auto unit = SparseParam::from_dense(1, std::vector<double>{1.0});
  auto r1 = empirical_risk(s, basis, unit, 1);
  CHECK(r1.n_terms == 3);
  CHECK(r1.risk == doctest::Approx(1.0).epsilon(1e-15));

  // theta = (0.5): residuals 1.5, 2, 2.5 -> (2.25 + 4 + 6.25)/3
  auto half = SparseParam::from_dense(1, std::vector<double>{0.5});
  auto r2 = empirical_risk(s, basis, half, 1);
  CHECK(r2.risk == doctest::Approx(12.5 / 3.0).epsilon(1e-15));

  // zero parameter: mean of squared observations x_2..x_n
  SparseParam zero(1);
  auto r3 = empirical_risk(s, basis, zero, 1);
  CHECK(r3.risk == doctest::Approx((4.0 + 9.0 + 16.0) / 3.0).epsilon(1e-15));
}

TEST_CASE("empirical risk with a length-2 window") {
  TimeSeries s({1.0, -1.0, 2.0, 0.5});
  auto basis = PredictorBasis::ar_linear(2);
  // theta = (0.5, 0.25); windows are (x_{i-1}, x_{i-2}) most recent first:
  // i=3: 0.5*(-1) + 0.25*1 = -0.25, resid 2.25; i=4: 0.5*2 + 0.25*(-1) = 0.75, resid -0.25
  auto theta = SparseParam::from_dense(2, std::vector<double>{0.5, 0.25});
  auto r = empirical_risk(s, basis, theta, 2);
  CHECK(r.n_terms == 2);
  CHECK(r.risk == doctest::Approx((2.25 * 2.25 + 0.0625) / 2.0).epsilon(1e-15));
}

TEST_CASE("holdout risk matches the same functional on fresh data") {
  TimeSeries test({2.0, 1.0, 3.0});
  auto basis = PredictorBasis::ar_linear(1);
  auto unit = SparseParam::from_dense(1, std::vector<double>{1.0});
  auto r = holdout_risk(unit, basis, test, 1);
  CHECK(r.n_terms == 2);
  CHECK(r.risk == doctest::Approx((1.0 + 4.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("risk requires n > q") {
  TimeSeries s({1.0, 2.0});
  auto basis = PredictorBasis::ar_linear(2);
  SparseParam zero(2);
  CHECK_THROWS_AS(empirical_risk(s, basis, zero, 2), std::invalid_argument);
  CHECK_THROWS_AS(holdout_risk(zero, basis, s, 2), std::invalid_argument);
}

TEST_CASE("risk rejects dimension mismatch") {
  TimeSeries s({1.0, 2.0, 3.0});
  auto basis = PredictorBasis::ar_linear(1);
  SparseParam wrong(2);
  CHECK_THROWS_AS(empirical_risk(s, basis, wrong, 1), std::invalid_argument);
}
