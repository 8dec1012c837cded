#include <array>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "diamond/bounds.hpp"
#include "diamond/scalar_opt.hpp"
#include "diamond/symmetric.hpp"
#include "oracle.hpp"

using namespace diamond;

namespace {

Rate identity(Rho r) { return Rate(r.value()); }

}  // namespace

TEST(Tolerances, Validation) {
  EXPECT_NO_THROW(Tolerances{}.validate());
  EXPECT_THROW(Tolerances::uniform(0.0), DomainError);
  EXPECT_THROW(Tolerances::uniform(0.02), DomainError);
  EXPECT_THROW((Tolerances{1e-9, -1}).validate(), DomainError);
  EXPECT_EQ(Tolerances::uniform(1e-6).rho, 1e-6);
}

TEST(Interval, Validation) {
  EXPECT_THROW(Interval(0.6, 0.5), DomainError);
  EXPECT_THROW(Interval(-0.1, 0.5), DomainError);
  EXPECT_THROW(Interval(0.0, 1.1), DomainError);
  EXPECT_NO_THROW(Interval(0.3, 0.3));
}

TEST(MaximizeMin, SymmetricCrossing) {
  const std::array<Term, 1> dec{[](Rho r) { return Rate(1.0 - r.value()); }};
  const auto res = maximize_min(identity, dec, Interval(0, 1), Tolerances{});
  EXPECT_NEAR(res.argmax.value(), 0.5, 1e-9);
  EXPECT_NEAR(res.value.bits(), 0.5, 1e-9);
  EXPECT_GE(res.upper.bits(), res.value.bits());
  EXPECT_LE(res.upper.bits() - res.value.bits(), 1e-9);
}

TEST(MaximizeMin, EndpointCases) {
  const std::array<Term, 1> high{[](Rho) { return Rate(5.0); }};
  auto res = maximize_min(identity, high, Interval(0.1, 0.7), Tolerances{});
  EXPECT_EQ(res.argmax.value(), 0.7);
  EXPECT_EQ(res.value.bits(), 0.7);

  const std::array<Term, 1> low{[](Rho) { return Rate(-1.0); }};
  res = maximize_min(identity, low, Interval(0.1, 0.7), Tolerances{});
  EXPECT_EQ(res.argmax.value(), 0.1);
  EXPECT_EQ(res.value.bits(), -1.0);

  res = maximize_min(identity, high, Interval(0.4, 0.4), Tolerances{});
  EXPECT_EQ(res.argmax.value(), 0.4);
}

TEST(MaximizeMin, Errors) {
  const std::array<Term, 0> none{};
  EXPECT_THROW(maximize_min(identity, std::span<const Term>(none), Interval(0, 1), Tolerances{}), ArgumentError);
  // An increasing "decreasing" term breaks the structure assumption.
  const std::array<Term, 1> wrong{[](Rho r) { return Rate(2.0 * r.value() - 0.5); }};
  EXPECT_THROW(maximize_min([](Rho r) { return Rate(0.1 * r.value()); }, wrong, Interval(0, 1), Tolerances{}),
               StructureError);
}

TEST(MaximizeMin, WorkedExampleT1) {
  const ChannelParams c(1.2, 1.2, 3, 3);
  const std::array<Term, 3> dec{[&](Rho r) { return link_term_1(c, r); }, [&](Rho r) { return link_term_2(c, r); },
                                [&](Rho r) { return correlated_source_term(c, r); }};
  const auto res =
      maximize_min([&](Rho r) { return mac_term(c, r); }, dec, Interval(0, rho_star(3, 3).value()), Tolerances{});
  EXPECT_NEAR(res.argmax.value(), 0.7643, 1e-4);
  EXPECT_NEAR(res.value.bits(), 1.7671, 1e-4);
}

TEST(MaximizeMin, LargeRatesMaxAtRightEndpoint) {
  const ChannelParams c(5, 5, 3, 3);
  const double s = rho_star(3, 3).value();
  const std::array<Term, 3> dec{[&](Rho r) { return link_term_1(c, r); }, [&](Rho r) { return link_term_2(c, r); },
                                [&](Rho r) { return correlated_source_term(c, r); }};
  const auto res = maximize_min([&](Rho r) { return mac_term(c, r); }, dec, Interval(0, s), Tolerances{});
  EXPECT_EQ(res.argmax.value(), s);
  EXPECT_NEAR(res.value.bits(), oracle::half_log(6 + 6 * s), 1e-12);
}

// Iteration bound ceil(log2(w / tol_rho)) + 2 for objectives whose slopes are
// moderate, where the rho-width criterion dominates.
TEST(MaximizeMin, IterationBoundModerateSlopes) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int k = 0; k < 200; ++k) {
    const double c = u(rng);
    const std::array<Term, 1> dec{[c](Rho r) { return Rate(c - 0.5 * r.value()); }};
    const Tolerances tol = Tolerances::uniform(1e-9);
    const auto res = maximize_min([](Rho r) { return Rate(0.5 * r.value()); }, dec, Interval(0, 1), tol);
    EXPECT_NEAR(res.argmax.value(), c, 2e-9);
    const int bound = static_cast<int>(std::ceil(std::log2(1.0 / tol.rho))) + 2;
    EXPECT_LE(res.iterations, bound);
  }
}

TEST(FindCrossing, Basic) {
  EXPECT_NEAR(find_crossing(identity, [](Rho r) { return Rate(1 - r.value()); }, Interval(0, 1), Tolerances{}).value(),
              0.5, 1e-9);
  EXPECT_THROW(find_crossing(identity, [](Rho r) { return Rate(2 + r.value()); }, Interval(0, 1), Tolerances{}),
               NoCrossingError);
}

TEST(FindCrossing, WorkedExampleRoots) {
  const SymmetricParams s(1.2, 3);
  const auto f1s = [&](Rho r) { return f1(s, r); };
  const auto f2s = [&](Rho r) { return f2(s, r); };
  const auto f3s = [&](Rho r) { return f3(s, r); };
  EXPECT_NEAR(find_crossing(f3s, f2s, Interval(0, 1 - 1e-12), Tolerances{}).value(), 0.7643, 1e-4);
  EXPECT_NEAR(find_crossing(f1s, f2s, Interval(0, 1), Tolerances{}).value(), 0.7734, 1e-4);
}
