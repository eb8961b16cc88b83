#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hardedge/asymptotics.hpp"

using namespace hardedge;
using std::numbers::pi;

namespace {

// ln G(1/2) from Glaisher's constant.
const double kLogGlaisher = std::log(1.28242712910062263687534256886979);
const double kLogGHalf = std::log(2.0) / 24 + 0.125 - 0.25 * std::log(pi) - 1.5 * kLogGlaisher;

SigmaSample expansion_sample(double a, double s) {
  const double r = std::sqrt(s);
  return {s, sigma_expansion(a, s), 0.25 - a / (4 * r) - a / (32 * s * r),
          a / (8 * s * r) + 3 * a / (64 * s * s * r)};
}

}  // namespace

TEST(AsymLogP, OrderZero) {
  const auto t = asym_log_p(0.0, 10.0);
  EXPECT_DOUBLE_EQ(t.total(), -25.0);
  EXPECT_EQ(t.linear, 0.0);
  EXPECT_EQ(t.constant, 0.0);
  EXPECT_EQ(t.tau, 1);
}

TEST(AsymLogP, ConstantUsesBarnesG) {
  const double lg32 = 0.5 * std::log(pi) + kLogGHalf;  // G(3/2) = Gamma(1/2) G(1/2)
  EXPECT_NEAR(asym_log_p(0.5, 10.0).constant, lg32 - 0.25 * std::log(2 * pi), 1e-12);
}

TEST(AsymLogP, Termwise) {
  const auto t = asym_log_p(-0.5, 8.0);
  EXPECT_NEAR(t.total(), -16 - 4 - std::log(8.0) / 8 + kLogGHalf + 0.25 * std::log(2 * pi), 1e-12);
  EXPECT_NEAR(t.total(), t.quadratic + t.linear + t.log_term + t.constant, 0.0);
}

TEST(AsymLogP, Domain) {
  EXPECT_THROW(asym_log_p(1.0, 5.0), DomainError);
  EXPECT_THROW(asym_log_p(0.2, 0.0), DomainError);
}

TEST(SigmaExpansion, Values) {
  EXPECT_DOUBLE_EQ(sigma_expansion(0.0, 100.0), 25.0);
  EXPECT_NEAR(sigma_expansion(0.5, 400.0), 100 - 5 + 1.0 / 16 + 1.0 / 640, 1e-13);
  EXPECT_NEAR(sigma_expansion(0.5, 400.0, -1), 100 + 5 + 1.0 / 16 - 1.0 / 640, 1e-13);
}

TEST(SigmaExpansion, AgreesWithNystromAndRejectsWrongSign) {
  std::vector<double> grid;
  for (int i = -3; i <= 3; ++i) grid.push_back(400.0 + 0.5 * i);
  for (double a : {0.0, 0.5}) {
    const auto smp = sigma_samples(a, grid, 200);
    const double num = smp[3].sigma;
    EXPECT_LE(std::fabs(num - sigma_expansion(a, 400.0)) / num, 1e-2) << a;
    if (a != 0.0) {
      EXPECT_GT(std::fabs(num - sigma_expansion(a, 400.0, -1)) / num, 1e-2);
    }
  }
}

TEST(PiiiResidual, ZeroFunction) { EXPECT_EQ(piii_residual(SigmaSample{3.0, 0, 0, 0}, 0.0), 0.0); }

TEST(PiiiResidual, ExpansionSatisfiesEquationAsymptotically) {
  EXPECT_LE(std::fabs(piii_residual(expansion_sample(0.5, 1e4), 0.5)), 1e-3);
  // the wrong alpha leaves a residual orders of magnitude larger
  EXPECT_GT(std::fabs(piii_residual(expansion_sample(0.5, 1e4), 0.9)),
            100 * std::fabs(piii_residual(expansion_sample(0.5, 1e4), 0.5)));
}

TEST(PiiiResidual, NystromSamples) {
  std::vector<double> grid;
  for (int i = 0; i < 25; ++i) grid.push_back(52.0 - 48.0 * std::cos(pi * (i + 0.5) / 25));
  for (double a : {0.0, 0.3})
    for (const auto& x : sigma_samples(a, grid, 120))
      EXPECT_LE(std::fabs(piii_residual(x, a)), 1e-4) << a << " s=" << x.s;
}

TEST(PowerSymbolAsymptotic, Values) {
  EXPECT_NEAR(thm81_asym(0.0, 3.7), 0.0, 1e-14);
  EXPECT_NEAR(thm81_asym(-0.5, 10.0), -std::log(10.0) / 8 + 0.25 * std::log(2 * pi) + kLogGHalf, 1e-12);
  EXPECT_TRUE(std::isfinite(thm81_asym(-0.75, 7.0)));
  EXPECT_THROW(thm81_asym(0.5, 2.0), DomainError);
  EXPECT_THROW(thm81_asym(-1.5, 2.0), DomainError);
}

TEST(ConstantAssembly, Examples) {
  EXPECT_LE(s8_consistency(0.0, 5.0), 1e-12);
  EXPECT_LE(s8_consistency(0.25, 7.0), 1e-12);
  EXPECT_LE(s8_consistency(-0.4, 3.0), 1e-12);
}

TEST(ConstantAssembly, Grid) {
  for (double a : {-0.8, -0.3, 0.0, 0.45, 0.9})
    for (double R : {0.5, 2.0, 7.0, 20.0, 100.0}) EXPECT_LE(s8_consistency(a, R), 1e-12) << a << " " << R;
}

TEST(AsymptoticAgreement, GapShrinksWithR) {
  double prev = 1e300;
  for (double R : {6.0, 8.0, 10.0, 12.0}) {
    const double d = std::fabs(gap_prob_nystrom(0.5, R, 200).log_p - asym_log_p(0.5, R).total());
    EXPECT_LT(d, prev) << R;
    prev = d;
  }
  EXPECT_LE(prev, 0.05);
}
