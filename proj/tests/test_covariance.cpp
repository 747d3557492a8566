#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "fgf/covariance.hpp"
#include "fgf/errors.hpp"
#include "test_support.hpp"

namespace fgf {
namespace {

TEST(Covariance, BrownianSheetAtCorner) {
  const auto model = CovarianceModel::brownian_sheet(2);
  const std::vector<double> one{1.0, 1.0};
  EXPECT_EQ(model.evaluate(one, one), 1.0);
}

TEST(Covariance, ConstantFieldIsVariance) {
  const auto model = CovarianceModel::constant_field(3, 1.0);
  const std::vector<double> t{0.1, 0.2, 0.9}, s{0.7, 0.4, 0.05};
  EXPECT_EQ(model.evaluate(t, s), 1.0);
  EXPECT_EQ(CovarianceModel::zero_field(3).evaluate(t, s), 0.0);
}

TEST(Covariance, FractionalHalfReducesToBrownian) {
  const auto fbm = CovarianceModel::fractional_brownian_sheet({0.5, 0.5});
  const auto bm = CovarianceModel::brownian_sheet(2);
  const std::vector<double> t{0.3, 0.7}, s{0.6, 0.2};
  EXPECT_NEAR(fbm.evaluate(t, s), 0.06, 1e-15);
  EXPECT_EQ(fbm.evaluate(t, s), bm.evaluate(t, s));

  const Grid g(2, 6);
  EXPECT_EQ(gram(fbm, g), gram(bm, g));
}

TEST(Covariance, FractionalValue) {
  const auto fbm = CovarianceModel::fractional_brownian_sheet({0.7});
  const std::vector<double> t{0.3}, s{0.8};
  const double expected =
      0.5 * (std::pow(0.3, 1.4) + std::pow(0.8, 1.4) - std::pow(0.5, 1.4));
  EXPECT_DOUBLE_EQ(fbm.evaluate(t, s), expected);
}

TEST(Covariance, SymmetricOnRandomPoints) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& model : testing::catalog(Grid(2, 4))) {
    for (int trial = 0; trial < 50; ++trial) {
      const std::vector<double> t{u(rng), u(rng)}, s{u(rng), u(rng)};
      EXPECT_EQ(model.evaluate(t, s), model.evaluate(s, t)) << model.describe();
    }
  }
}

TEST(Covariance, ParameterValidation) {
  EXPECT_THROW(CovarianceModel::fractional_brownian_sheet({0.0}), DomainError);
  EXPECT_THROW(CovarianceModel::fractional_brownian_sheet({1.0}), DomainError);
  EXPECT_THROW(CovarianceModel::fractional_brownian_sheet({}), DomainError);
  EXPECT_THROW(CovarianceModel::constant_field(1, -1.0), DomainError);
  EXPECT_THROW(CovarianceModel::brownian_sheet(0), DomainError);
  EXPECT_THROW(CovarianceModel::tabulated(Grid(1, 3), Eigen::MatrixXd::Zero(2, 2)), DomainError);
}

TEST(Covariance, DimensionMismatch) {
  const auto model = CovarianceModel::brownian_sheet(2);
  const std::vector<double> t{0.5};
  EXPECT_THROW(model.evaluate(t, t), DomainError);
  EXPECT_THROW(trace(model, Grid(1, 4)), DomainError);
  EXPECT_THROW(gram(model, Grid(3, 2)), DomainError);
}

TEST(Covariance, TraceExamples) {
  EXPECT_NEAR(trace(CovarianceModel::brownian_sheet(1), Grid(1, 256)).value, 0.5, 1e-4);
  EXPECT_NEAR(trace(CovarianceModel::brownian_sheet(2), Grid(2, 64)).value, 0.25, 1e-3);
  const auto constant = trace(CovarianceModel::constant_field(2, 1.0), Grid(2, 5));
  EXPECT_NEAR(constant.value, 1.0, 1e-14);
  EXPECT_TRUE(constant.finite);
}

TEST(Covariance, TraceRejectsNonFiniteVariance) {
  const Grid g(1, 3);
  Eigen::MatrixXd table = Eigen::MatrixXd::Identity(3, 3);
  table(1, 1) = std::numeric_limits<double>::infinity();
  try {
    trace(CovarianceModel::tabulated(g, table), g);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("node 1"), std::string::npos);
  }
}

TEST(Covariance, GramExamples) {
  const Grid g1(1, 2);
  Eigen::MatrixXd expected(2, 2);
  expected << 0.25, 0.25, 0.25, 0.75;
  EXPECT_EQ(gram(CovarianceModel::brownian_sheet(1), g1), expected);

  const Grid g(2, 3);
  EXPECT_EQ(gram(CovarianceModel::zero_field(2), g), Eigen::MatrixXd::Zero(9, 9));
  EXPECT_EQ(gram(CovarianceModel::constant_field(2, 1.0), g), Eigen::MatrixXd::Ones(9, 9));
  EXPECT_EQ(gram(CovarianceModel::brownian_sheet(2), g), testing::brownian_gram_by_hand(g));
}

TEST(Covariance, GramIsExactlySymmetric) {
  for (const Grid& g : {Grid(1, 17), Grid(2, 5)}) {
    for (const auto& model : testing::catalog(g)) {
      const Eigen::MatrixXd m = gram(model, g);
      EXPECT_TRUE(m == m.transpose()) << model.describe();
    }
  }
}

TEST(Covariance, GramRespectsNodeBudget) {
  EXPECT_THROW(gram(CovarianceModel::brownian_sheet(2), Grid(2, 10), 99), ResourceError);
  EXPECT_NO_THROW(gram(CovarianceModel::brownian_sheet(2), Grid(2, 10), 100));
}

TEST(Covariance, HilbertSchmidtBoundedByTrace) {
  for (const Grid& g : {Grid(1, 8), Grid(1, 64), Grid(2, 6), Grid(3, 3)}) {
    for (const auto& model : testing::catalog(g)) {
      const double hs = hilbert_schmidt_norm(gram(model, g), g);
      EXPECT_LE(hs, trace(model, g).value + 1e-8) << model.describe();
    }
  }
}

TEST(Covariance, TabulatedUsesContainingCell) {
  const Grid g(1, 4);
  const Eigen::MatrixXd table = testing::brownian_gram_by_hand(g);
  const auto model = CovarianceModel::tabulated(g, table);
  const std::vector<double> t{0.3}, s{0.9};
  EXPECT_EQ(model.evaluate(t, s), table(1, 3));
  EXPECT_EQ(gram(model, g), table);
  // Coarser grid samples the table at its own midpoints.
  const Grid coarse(1, 2);
  EXPECT_EQ(gram(model, coarse)(0, 1), table(1, 3));
}

}  // namespace
}  // namespace fgf
