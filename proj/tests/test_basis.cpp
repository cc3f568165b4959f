#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tsagg/basis.hpp"
#include "tsagg/core.hpp"
#include "tsagg/rng.hpp"

using namespace tsagg;

TEST_CASE("ar_linear picks window coordinates") {
  auto basis = PredictorBasis::ar_linear(3);
  CHECK(basis.size() == 3);
  CHECK(basis.window() == 3);
  std::vector<double> w{0.5, -1.0, 2.0};  // most recent first
  CHECK(basis.evaluate(0, w) == 0.5);
  CHECK(basis.evaluate(1, w) == -1.0);
  CHECK(basis.evaluate(2, w) == 2.0);
}

TEST_CASE("sign_pattern bit layout") {
  auto basis = PredictorBasis::sign_pattern(2);
  CHECK(basis.size() == 4);

  // (positive, non-positive): bit0 = 1, bit1 = 0 -> pattern 1
  std::vector<double> w1{1.0, -1.0};
  CHECK(basis.evaluate(1, w1) == 1.0);
  CHECK(basis.evaluate(0, w1) == 0.0);
  CHECK(basis.evaluate(2, w1) == 0.0);
  CHECK(basis.evaluate(3, w1) == 0.0);

  // mirrored window lands on pattern 2
  std::vector<double> w2{-1.0, 1.0};
  CHECK(basis.evaluate(2, w2) == 1.0);

  // zero counts as non-positive
  std::vector<double> w0{0.0, 0.0};
  CHECK(basis.evaluate(0, w0) == 1.0);

  std::vector<double> w3{0.3, 0.7};
  CHECK(basis.evaluate(3, w3) == 1.0);
}

TEST_CASE("sign_pattern indicators partition the window space") {
  auto basis = PredictorBasis::sign_pattern(3);
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> w{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                          rng.uniform(-1.0, 1.0)};
    double total = 0.0;
    for (std::size_t j = 0; j < basis.size(); ++j) total += basis.evaluate(j, w);
    CHECK(total == 1.0);
  }
}

TEST_CASE("custom predictors are called as given") {
  std::vector<PredictorBasis::Fn> fns{
      [](std::span<const double> w) { return w[0] * w[0]; },
      [](std::span<const double>) { return 3.0; }};
  auto basis = PredictorBasis::custom(2, std::move(fns));
  CHECK(basis.size() == 2);
  std::vector<double> w{-2.0, 5.0};
  CHECK(basis.evaluate(0, w) == 4.0);
  CHECK(basis.evaluate(1, w) == 3.0);
}

TEST_CASE("factory validation") {
  CHECK_THROWS_AS(PredictorBasis::ar_linear(0), std::invalid_argument);
  CHECK_THROWS_AS(PredictorBasis::sign_pattern(21), std::invalid_argument);
  CHECK_NOTHROW(PredictorBasis::sign_pattern(20));
  CHECK_THROWS_AS(PredictorBasis::custom(1, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_basis(BasisKind::custom, 2), std::invalid_argument);
  CHECK(basis_kind_from_name("ar_linear") == BasisKind::ar_linear);
  CHECK(basis_kind_from_name("sign_pattern") == BasisKind::sign_pattern);
  CHECK_THROWS_AS(basis_kind_from_name("fourier"), std::invalid_argument);
}

TEST_CASE("evaluate validates its arguments") {
  auto basis = PredictorBasis::ar_linear(2);
  std::vector<double> w{1.0, 2.0};
  CHECK_THROWS_AS(basis.evaluate(2, w), std::invalid_argument);
  std::vector<double> short_w{1.0};
  CHECK_THROWS_AS(basis.evaluate(0, short_w), std::invalid_argument);
}

TEST_CASE("predict sums over the support only") {
  auto basis = PredictorBasis::sign_pattern(2);
  auto theta = SparseParam::from_dense(4, std::vector<double>{0.5, 0.0, -1.0, 0.0});
  std::vector<double> cell2{-0.1, 0.4};
  CHECK(predict(basis, theta, cell2) == -1.0);
  std::vector<double> cell0{-1.0, -1.0};
  CHECK(predict(basis, theta, cell0) == 0.5);
  std::vector<double> cell3{0.2, 0.3};
  CHECK(predict(basis, theta, cell3) == 0.0);
}

TEST_CASE("predict on ar_linear is the dot product") {
  auto basis = PredictorBasis::ar_linear(3);
  auto theta = SparseParam::from_dense(3, std::vector<double>{0.5, 0.0, -0.25});
  std::vector<double> w{2.0, 100.0, 4.0};
  CHECK(predict(basis, theta, w) == doctest::Approx(1.0 - 1.0).epsilon(1e-15));
}

TEST_CASE("predict validates dimensions") {
  auto basis = PredictorBasis::ar_linear(2);
  SparseParam wrong(3);
  std::vector<double> w{1.0, 2.0};
  CHECK_THROWS_AS(predict(basis, wrong, w), std::invalid_argument);
  SparseParam ok(2);
  std::vector<double> bad_w{1.0};
  CHECK_THROWS_AS(predict(basis, ok, bad_w), std::invalid_argument);
}
