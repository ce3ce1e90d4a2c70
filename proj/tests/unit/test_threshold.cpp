// Copyright 2026 The ADLA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "adla/error.hpp"
#include "adla/pearson.hpp"
#include "adla/stats.hpp"
#include "adla/threshold.hpp"
#include "oracles.hpp"

namespace adla {
namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

TEST(Series, ClosedForms) {
  EXPECT_EQ(series_sum(1), 1.0);
  EXPECT_NEAR(series_sum(2), 0.289868, 1e-6);
  EXPECT_NEAR(series_sum(2), kPi2 / 3.0 - 3.0, 1e-15);
  EXPECT_NEAR(series_sum(3), 10.0 - kPi2, 1e-15);
  EXPECT_NEAR(series_sum(4), kPi2 * kPi2 / 45.0 + 10.0 * kPi2 / 3.0 - 35.0,
              1e-14);
  EXPECT_THROW(series_sum(0), DomainError);
  EXPECT_THROW(series_sum(5), DomainError);
}

TEST(Series, MatchesDirectSummation) {
  for (int r = 1; r <= 4; ++r) {
    EXPECT_NEAR(series_sum(r), static_cast<double>(oracle::series(r, 1000000)),
                1e-12)
        << "r = " << r;
  }
}

TEST(Cumulants, LedgerValues) {
  const auto L = cumulants();
  EXPECT_EQ(L.kappa[0], 1.0);
  // Direct forms of the first four cumulants.
  EXPECT_NEAR(L.kappa[1], 2.0 * kPi2 / 3.0 - 6.0, 1e-14);
  EXPECT_NEAR(L.kappa[2], 80.0 - 8.0 * kPi2, 1e-12);
  EXPECT_NEAR(L.kappa[3], 16.0 * kPi2 * kPi2 / 15.0 + 160.0 * kPi2 - 1680.0,
              1e-10);
  EXPECT_NEAR(L.kappa[1], 0.579736, 1e-6);
  EXPECT_NEAR(L.kappa[2], 1.043185, 1e-4 * 1.043185);
  EXPECT_NEAR(L.kappa[3], 3.03999, 1e-4 * 3.03999);
  EXPECT_EQ(L.mu[0], L.kappa[0]);
  EXPECT_EQ(L.mu[1], L.kappa[1]);
  EXPECT_EQ(L.mu[2], L.kappa[2]);
  EXPECT_NEAR(L.mu[3], L.kappa[3] + 3.0 * L.kappa[1] * L.kappa[1], 1e-14);
  EXPECT_NEAR(L.gamma1, 2.3632, 1e-4);
  EXPECT_NEAR(L.gamma2, 12.045, 1e-3);
}

TEST(Cumulants, GeneralFormula) {
  const auto L = cumulants();
  for (int r = 1; r <= 4; ++r) {
    const long double want = std::pow(2.0L, r - 1) * oracle::factorial(r - 1) *
                             oracle::series(r, 1000000);
    EXPECT_LE(std::fabs(L.kappa[r - 1] - want), 1e-12) << "r = " << r;
  }
}

TEST(Pearson, AdlaLedgerIsTypeSix) {
  const auto fit = pearson_fit(cumulants());
  EXPECT_EQ(fit.type(), PearsonType::VI);
  EXPECT_GT(fit.criterion(), 1.0);
  EXPECT_TRUE(std::isinf(fit.support_upper()));
  EXPECT_GT(fit.support_lower(), 0.0);
  EXPECT_LT(fit.support_lower(), 1.0);
}

TEST(Pearson, FittedCurveReproducesMoments) {
  // Moments of the fitted density by midpoint quadrature in s, with
  // x = lo + L s^6 smoothing the integrable spike at the lower edge.
  const auto L = cumulants();
  const auto fit = pearson_fit(L);
  const double lo = fit.support_lower();
  const double span = 300.0 - lo;
  const int steps = 400000;
  long double m0 = 0, m1 = 0, m2 = 0, m3 = 0;
  for (int i = 0; i < steps; ++i) {
    const double s = (i + 0.5) / steps;
    const double s5 = s * s * s * s * s;
    const double x = lo + span * s5 * s;
    const long double w = fit.pdf(x) * 6.0 * span * s5 / steps;
    const long double d = x - L.mu[0];
    m0 += w;
    m1 += w * x;
    m2 += w * d * d;
    m3 += w * d * d * d;
  }
  EXPECT_NEAR(static_cast<double>(m0), 1.0, 1e-8);
  EXPECT_NEAR(static_cast<double>(m1), L.mu[0], 1e-8);
  EXPECT_NEAR(static_cast<double>(m2), L.mu[1], 1e-7);
  EXPECT_NEAR(static_cast<double>(m3), L.mu[2], 1e-6);
}

TEST(Pearson, CdfAndSfAreComplementary) {
  const auto fit = pearson_fit(cumulants());
  for (double x : {0.35, 0.5, 1.0, 2.0, 5.0, 12.0}) {
    EXPECT_NEAR(fit.cdf(x) + fit.sf(x), 1.0, 1e-10) << x;
  }
  EXPECT_EQ(fit.cdf(fit.support_lower() - 1.0), 0.0);
  EXPECT_EQ(fit.sf(fit.support_lower() - 1.0), 1.0);
}

TEST(Pearson, QuantileInvertsSf) {
  const auto fit = pearson_fit(cumulants());
  for (double a : {0.3, 0.05, 1e-3, 1e-6, 1e-9}) {
    const double q = fit.upper_quantile(a);
    EXPECT_NEAR(fit.sf(q) / a, 1.0, 1e-8) << a;
  }
}

TEST(Pearson, GaussianLedgerGivesNormalQuantile) {
  const auto L = ledger_from_cumulants(0.0, 1.0, 0.0, 0.0);
  EXPECT_EQ(L.gamma1, 0.0);
  EXPECT_EQ(L.gamma2, 3.0);
  EXPECT_EQ(pearson_fit(L).type(), PearsonType::normal);
  EXPECT_NEAR(pearson_quantile(L, 0.025), 1.95996, 1e-5);
  EXPECT_NEAR(pearson_quantile(L, 0.025), normal_quantile(0.975), 1e-9);
}

TEST(Pearson, OtherFamilies) {
  // Gamma(shape 4): skewness 1, kurtosis 4.5 lies on the Type III line.
  {
    const auto fit = PearsonDistribution::fit({4.0, 4.0, 1.0, 4.5});
    EXPECT_EQ(fit.type(), PearsonType::III);
    // Gamma(4, 1) upper 5% point.
    EXPECT_NEAR(fit.upper_quantile(0.05), 7.753657, 1e-5);
  }
  // Beta(2, 2): symmetric with kurtosis 3 - 6/7, Type II.
  {
    const auto fit =
        PearsonDistribution::fit({0.5, 0.05, 0.0, 3.0 - 6.0 / 7.0});
    EXPECT_EQ(fit.type(), PearsonType::II);
    EXPECT_NEAR(fit.upper_quantile(0.1), 0.8041999, 1e-6);
    EXPECT_NEAR(fit.cdf(0.25), 0.15625, 1e-8);
  }
  // Student t with 10 degrees of freedom: kurtosis 3 + 6/6 = 4, Type VII.
  {
    const auto fit = PearsonDistribution::fit({0.0, 10.0 / 8.0, 0.0, 4.0});
    EXPECT_EQ(fit.type(), PearsonType::VII);
    EXPECT_NEAR(fit.upper_quantile(0.025), 2.228139, 1e-5);
  }
  // Beta(2, 5): Type I.
  {
    const double a = 2, b = 5, s = a + b;
    const double mean = a / s;
    const double var = a * b / (s * s * (s + 1));
    const double skew = 2 * (b - a) * std::sqrt(s + 1) / ((s + 2) * std::sqrt(a * b));
    const double exk = 6 * ((a - b) * (a - b) * (s + 1) - a * b * (s + 2)) /
                       (a * b * (s + 2) * (s + 3));
    const auto fit = PearsonDistribution::fit({mean, var, skew, 3.0 + exk});
    EXPECT_EQ(fit.type(), PearsonType::I);
    // Beta(2, 5) upper 5% point.
    EXPECT_NEAR(fit.upper_quantile(0.05), 0.5818034, 1e-5);
  }
  // Skewed with kurtosis inside the Type IV band.
  {
    const auto fit = PearsonDistribution::fit({0.0, 1.0, 0.5, 5.0});
    EXPECT_EQ(fit.type(), PearsonType::IV);
    EXPECT_GT(fit.criterion(), 0.0);
    EXPECT_LT(fit.criterion(), 1.0);
    EXPECT_NEAR(fit.cdf(fit.upper_quantile(0.2)), 0.8, 1e-8);
  }
}

TEST(Pearson, InadmissibleMomentsRejected) {
  // beta2 < beta1 + 1 is impossible for any distribution.
  EXPECT_THROW(PearsonDistribution::fit({0.0, 1.0, 2.0, 3.0}),
               UnsupportedPearsonType);
}

TEST(Threshold, PaperAnchor) {
  const double tau = pearson_quantile(cumulants(), kCanonicalAlpha);
  EXPECT_GE(tau, 11.5);
  EXPECT_LE(tau, 12.5);
  EXPECT_NEAR(tau, 11.99, 0.01);
  const auto spec = derive_thresholds(kCanonicalAlpha);
  EXPECT_EQ(spec.tau_t, 4.5);
  EXPECT_EQ(spec.tau_a, tau);
  EXPECT_EQ(spec.method, ThresholdMethod::pearson_fit);
  EXPECT_EQ(spec.pearson_type, PearsonType::VI);
  EXPECT_FALSE(spec.mc_check.has_value());
}

TEST(Threshold, TauAStrictlyDecreasingInAlpha) {
  double prev = 0.0;
  for (double a : {0.1, 0.05, 0.01, 0.001}) {
    const double tau = derive_thresholds(a).tau_a;
    EXPECT_GT(tau, prev) << a;
    prev = tau;
  }
}

TEST(Threshold, TauTFromNormalQuantile) {
  EXPECT_NEAR(derive_thresholds(0.05).tau_t, 1.959963984540054, 1e-12);
  EXPECT_NEAR(derive_thresholds(0.01).tau_t, 2.5758293035489004, 1e-12);
}

TEST(Threshold, Preconditions) {
  EXPECT_THROW(derive_thresholds(0.6), DomainError);
  EXPECT_THROW(derive_thresholds(0.0), DomainError);
  EXPECT_THROW(derive_thresholds(-0.1), DomainError);
  EXPECT_THROW(pearson_quantile(cumulants(), 0.5), DomainError);
}

TEST(Threshold, CanonicalConstants) {
  const auto spec = canonical_thresholds();
  EXPECT_EQ(spec.tau_t, 4.5);
  EXPECT_EQ(spec.tau_a, 11.99);
  EXPECT_EQ(spec.method, ThresholdMethod::paper_constant);
  EXPECT_NO_THROW(validate(spec));
  auto bad = spec;
  bad.tau_a = -1.0;
  EXPECT_THROW(validate(bad), DomainError);
}

TEST(MonteCarlo, DeterministicInSeed) {
  EXPECT_EQ(sample_a2_infinity(1000, 7), sample_a2_infinity(1000, 7));
  EXPECT_NE(sample_a2_infinity(1000, 7), sample_a2_infinity(1000, 8));
  const auto batch = sample_a2_infinity_batch(5, 1000, 7, {1});
  EXPECT_EQ(batch[0], sample_a2_infinity(1000, 7));
}

TEST(MonteCarlo, BatchIndependentOfThreads) {
  EXPECT_EQ(sample_a2_infinity_batch(5000, 200, 3, {1}),
            sample_a2_infinity_batch(5000, 200, 3, {4}));
}

TEST(MonteCarlo, MeanAndVarianceOfTruncatedSeries) {
  const std::size_t draws = 1000000;
  const auto v = sample_a2_infinity_batch(draws, 999, 11);
  long double s = 0, ss = 0;
  for (double x : v) s += x;
  const long double mean = s / draws;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double var = static_cast<double>(ss / (draws - 1));
  EXPECT_NEAR(static_cast<double>(mean), 0.999, 0.002);
  EXPECT_NEAR(var, cumulants().kappa[1], 0.01);
}

TEST(MonteCarlo, EmpiricalQuantileOrderStatistic) {
  std::vector<double> v;
  for (int i = 1; i <= 100; ++i) v.push_back(101 - i);
  EXPECT_EQ(empirical_upper_quantile(v, 0.05), 95.0);
  EXPECT_EQ(empirical_upper_quantile(v, 0.5), 50.0);
}

TEST(MonteCarlo, CrossCheckAgreesAtModerateAlpha) {
  const auto spec = derive_thresholds(0.05, 200000, 5);
  ASSERT_TRUE(spec.mc_check.has_value());
  EXPECT_EQ(spec.mc_check->draws, 200000u);
  EXPECT_NEAR(spec.mc_check->quantile, spec.tau_a, 0.05);
  EXPECT_EQ(spec.mc_check->discrepancy, spec.mc_check->quantile - spec.tau_a);
  // Too few tail samples below 1e-4: the check is skipped.
  EXPECT_FALSE(derive_thresholds(1e-5, 1000, 5).mc_check.has_value());
}

TEST(MonteCarlo, MonteCarloMethod) {
  const auto spec = derive_thresholds_monte_carlo(0.05, 100000, 9);
  EXPECT_EQ(spec.method, ThresholdMethod::monte_carlo);
  EXPECT_NEAR(spec.tau_a, derive_thresholds(0.05).tau_a, 0.06);
}

}  // namespace
}  // namespace adla
