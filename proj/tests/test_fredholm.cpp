#include <gtest/gtest.h>

#include <cmath>

#include "hardedge/fredholm.hpp"

using namespace hardedge;

TEST(GapNystrom, EmptyInterval) {
  auto r = gap_prob_nystrom(0.0, 0.0, 16);
  EXPECT_EQ(r.p, 1.0);
  EXPECT_EQ(r.log_p, 0.0);
}

TEST(GapNystrom, AgreesWithSeries) {
  EXPECT_NEAR(gap_prob_nystrom(0.0, 0.5, 40).p, series_oracle(0.0, 0.5, 3, 64), 1e-10);
}

TEST(GapNystrom, LargeIntervalNearQuadraticDecay) {
  EXPECT_NEAR(gap_prob_nystrom(0.0, 8.0, 200).log_p, -16.0, 0.05);
}

// For alpha = 0 the hard-edge gap probability is exactly exp(-R^2/4): the
// smallest LUE eigenvalue with alpha = 0 is exponential with rate N.
TEST(GapNystrom, OrderZeroClosedForm) {
  for (double R : {0.3, 1.0, 3.0, 6.0, 9.0, 15.0, 25.0})
    EXPECT_NEAR(gap_prob_nystrom(0.0, R, 200).log_p, -R * R / 4, 1e-9 * std::max(1.0, R * R)) << R;
}

TEST(GapNystrom, ResultInvariants) {
  for (double a : {-0.9, -0.4, 0.3, 0.8})
    for (double R : {0.5, 3.0, 11.0}) {
      auto r = gap_prob_nystrom(a, R, 120);
      EXPECT_GT(r.p, 0.0);
      EXPECT_LE(r.p, 1.0);
      EXPECT_NEAR(r.p, std::exp(r.log_p), 1e-15);
      EXPECT_GE(r.est_error, 0.0);
    }
}

TEST(GapNystrom, MonotoneInR) {
  for (double a : {-0.4, 0.0, 0.5}) {
    double prev = 0.0;
    for (double R = 0.25; R <= 14.0; R += 0.75) {
      const double v = gap_prob_nystrom(a, R, 100).log_p;
      EXPECT_LT(v, prev) << a << " " << R;
      prev = v;
    }
  }
}

TEST(GapNystrom, SelfConvergence) {
  for (double a : {-0.4, 0.0, 0.5})
    for (double R : {2.0, 5.0, 7.5, 10.0})
      EXPECT_NEAR(gap_prob_nystrom(a, R, 100).log_p, gap_prob_nystrom(a, R, 200).log_p, 1e-10)
          << a << " " << R;
}

TEST(GapNystrom, MatrixSymmetric) {
  auto s = detail::build_nystrom<double>(-0.3, 4.0, 37);
  for (std::size_t i = 0; i < s.m; ++i)
    for (std::size_t j = 0; j < s.m; ++j) EXPECT_EQ(s.A[i * s.m + j], s.A[j * s.m + i]);
}

TEST(GapNystrom, PrecisionPathsAgree) {
  for (double a : {-0.4, 0.5})
    EXPECT_NEAR(gap_prob_nystrom(a, 5.0, 120, Precision::Double).log_p,
                gap_prob_nystrom(a, 5.0, 120, Precision::Extended).log_p, 1e-11);
}

TEST(GapNystrom, ParameterErrors) {
  EXPECT_THROW(gap_prob_nystrom(0.0, 1.0, 4), ParameterError);
  EXPECT_THROW(gap_prob_nystrom(0.0, 1.0, 2048), ParameterError);
  EXPECT_THROW(gap_prob_nystrom(0.0, 31.0, 100), DomainError);
  EXPECT_THROW(gap_prob_nystrom(-1.0, 1.0, 100), DomainError);
}

TEST(SeriesOracle, Trivial) {
  EXPECT_EQ(series_oracle(0.0, 0.0, 3, 16), 1.0);
  EXPECT_EQ(series_oracle(0.4, 0.0, 1, 8), 1.0);
}

TEST(SeriesOracle, AgreesWithNystrom) {
  EXPECT_NEAR(series_oracle(0.5, 0.3, 2, 32), gap_prob_nystrom(0.5, 0.3, 64).p, 1e-10);
}

TEST(SeriesOracle, OneTermIsOneMinusTrace) {
  EXPECT_NEAR(series_oracle(0.0, 0.5, 1, 64), 1.0 - trace_on({0.0}, 0.5, 64), 1e-15);
}

TEST(Resolvent, VanishingCorrection) {
  const double R = 1e-4;
  EXPECT_NEAR(resolvent_diag(0.0, R, 64), kernel_eval({0.0}, R, R), 1e-12);
}

TEST(Resolvent, MatchesFiniteDifference) {
  for (double R : {1.0, 2.0, 4.0, 8.0}) {
    const double h = 1e-3;
    const double fd =
        (gap_prob_nystrom(0.3, R + h, 100).log_p - gap_prob_nystrom(0.3, R - h, 100).log_p) /
        (2 * h);
    EXPECT_NEAR(-resolvent_diag(0.3, R, 100), fd, 1e-6) << R;
  }
}

TEST(Resolvent, OrderZeroIsHalfR) {
  for (double R : {0.5, 2.0, 5.0, 12.0, 20.0}) EXPECT_NEAR(resolvent_diag(0.0, R, 150), R / 2, 1e-9) << R;
}

TEST(Resolvent, SigmaLeadingTerm) {
  const double sigma = 2.5 * resolvent_diag(0.0, 5.0, 200);
  EXPECT_NEAR(sigma, 25.0 / 4, 0.1 * 25.0 / 4);
}

TEST(Sigma, VanishesNearOrigin) {
  std::vector<double> g;
  for (int i = 0; i < 7; ++i) g.push_back(1e-6 * (1.0 + 0.1 * i));
  auto s = sigma_samples(0.0, g, 64);
  EXPECT_LE(std::fabs(s[0].sigma), 1e-5);
}

TEST(Sigma, LargeSOrderZero) {
  std::vector<double> g;
  for (int i = -3; i <= 3; ++i) g.push_back(400.0 + 2.0 * i);
  auto s = sigma_samples(0.0, g, 90);
  EXPECT_NEAR(s[3].sigma / 100.0, 1.0, 1e-3);
  EXPECT_NEAR(s[3].sigma_p, 0.25, 1e-6);
  EXPECT_NEAR(s[3].sigma_pp, 0.0, 1e-6);
}

TEST(Sigma, LargeSHalfOrder) {
  std::vector<double> g;
  for (int i = -3; i <= 3; ++i) g.push_back(400.0 + 2.0 * i);
  auto s = sigma_samples(0.5, g, 90);
  const double ref = 100.0 - 0.25 * 20.0 + 1.0 / 16 + 1.0 / (32 * 20.0);
  EXPECT_NEAR(s[3].sigma / ref, 1.0, 1e-2);
  EXPECT_GE(s[3].sigma, 0.0);
}

TEST(Sigma, DerivativesOfSmoothData) {
  // the fit must reproduce the derivatives of an exact cubic
  std::vector<double> s(9), f(9);
  for (int i = 0; i < 9; ++i) {
    s[i] = 1.0 + 0.5 * i * i;
    f[i] = 0.3 * s[i] * s[i] * s[i] - s[i];
  }
  double d1, d2;
  detail::cheb_fit_derivs({s.begin(), s.begin() + 7}, {f.begin(), f.begin() + 7}, s[3], d1, d2);
  EXPECT_NEAR(d1, 0.9 * s[3] * s[3] - 1.0, 1e-9);
  EXPECT_NEAR(d2, 1.8 * s[3], 1e-9);
}

TEST(Sigma, GridTooCoarse) {
  EXPECT_THROW(sigma_samples(0.0, {1.0, 2.0, 3.0}, 64), ParameterError);
}
