#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "diamond/core.hpp"

using namespace diamond;

TEST(Rate, RejectsNanAndPositiveInfinity) {
  EXPECT_THROW(Rate(std::nan("")), DomainError);
  EXPECT_THROW(Rate(std::numeric_limits<double>::infinity()), DomainError);
  EXPECT_NO_THROW(Rate(-std::numeric_limits<double>::infinity()));
  EXPECT_FALSE(Rate::neg_inf().is_finite());
}

TEST(Rate, ArithmeticAndOrdering) {
  EXPECT_DOUBLE_EQ((Rate(1.5) + Rate(0.25)).bits(), 1.75);
  EXPECT_DOUBLE_EQ((Rate(1.5) - Rate(0.25)).bits(), 1.25);
  EXPECT_THROW(Rate(1.0) - Rate::neg_inf(), DomainError);
  EXPECT_LT(Rate::neg_inf(), Rate(-1e300));
  EXPECT_EQ(std::min(Rate(2.0), Rate(1.0)), Rate(1.0));
}

TEST(Rho, Range) {
  EXPECT_THROW(Rho(-1e-15), DomainError);
  EXPECT_THROW(Rho(1.0 + 1e-15), DomainError);
  EXPECT_THROW(Rho(std::nan("")), DomainError);
  EXPECT_EQ(Rho::zero().value(), 0.0);
  EXPECT_EQ(Rho::one().value(), 1.0);
  EXPECT_LT(Rho(0.2), Rho(0.3));
}

TEST(Params, Validation) {
  EXPECT_THROW(ChannelParams(-1, 0, 0, 0), DomainError);
  EXPECT_THROW(ChannelParams(0, 0, 0, std::numeric_limits<double>::infinity()), DomainError);
  EXPECT_THROW(SymmetricParams(0.5, std::nan("")), DomainError);
  const auto c = SymmetricParams(1.2, 3).to_channel();
  EXPECT_EQ(c.r1(), 1.2);
  EXPECT_EQ(c.r2(), 1.2);
  EXPECT_EQ(c.p1(), 3.0);
  EXPECT_EQ(c.p2(), 3.0);
}

TEST(GaussRate, Values) {
  EXPECT_EQ(gauss_rate(0).bits(), 0.0);
  EXPECT_NEAR(gauss_rate(3).bits(), 1.0, 1e-15);
  EXPECT_NEAR(gauss_rate(12).bits(), 0.5 * std::log2(13.0), 1e-15);
  EXPECT_NEAR(gauss_rate(12).bits(), 1.8502, 1e-4);
  EXPECT_THROW(gauss_rate(-1), DomainError);
}

TEST(GaussRate, IncreasingAndConcave) {
  double prev_slope = std::numeric_limits<double>::infinity();
  for (double x = 0.0; x < 50.0; x += 0.37) {
    const double h = 0.37;
    const double slope = gauss_rate(x + h).bits() - gauss_rate(x).bits();
    EXPECT_GT(slope, 0.0);
    EXPECT_LT(slope, prev_slope);
    prev_slope = slope;
  }
}

TEST(CorrelationPenalty, Values) {
  EXPECT_EQ(correlation_penalty(Rho(0)).bits(), 0.0);
  EXPECT_FALSE(std::signbit(correlation_penalty(Rho(0)).bits()));
  EXPECT_NEAR(correlation_penalty(Rho(0.5)).bits(), 0.5 * std::log2(4.0 / 3.0), 1e-15);
  EXPECT_NEAR(correlation_penalty(Rho(0.5)).bits(), 0.2075, 1e-4);
  // 2.4 - 1.7671 from the worked example.
  EXPECT_NEAR(correlation_penalty(Rho(0.7643)).bits(), 0.6330, 1e-3);
  EXPECT_THROW(correlation_penalty(Rho(1)), DomainError);
}

TEST(CorrelationPenalty, SubtractGivesNegInfAtOne) {
  EXPECT_FALSE(subtract_correlation_penalty(Rate(2.4), Rho(1)).is_finite());
  EXPECT_NEAR(subtract_correlation_penalty(Rate(1.0), Rho(std::sqrt(0.5))).bits(), 0.5, 1e-14);
}
