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

#ifndef ADLA_THRESHOLD_HPP
#define ADLA_THRESHOLD_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "adla/parallel.hpp"
#include "adla/pearson.hpp"

namespace adla {

// Conventional TVLA operating point: |t| > 4.5, which corresponds to a tail
// probability of about 3.4e-6 under the normal approximation.
inline constexpr double kCanonicalAlpha = 3.4e-6;
inline constexpr double kCanonicalTauT = 4.5;
// Published ADLA threshold at kCanonicalAlpha, kept for the paper_constant
// method and as a regression anchor.
inline constexpr double kCanonicalTauA = 11.99;

inline constexpr std::size_t kDefaultJMax = 1000;

// Cumulants, central moments (mu[0] is the mean) and shape ratios of a
// distribution. gamma2 is the plain kurtosis mu4 / mu2^2.
struct CumulantLedger {
  std::array<double, 4> kappa{};
  std::array<double, 4> mu{};
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

CumulantLedger ledger_from_cumulants(double k1, double k2, double k3,
                                     double k4);

// sum_{j>=1} 1 / (j (j+1))^r in closed form, r in 1..4.
double series_sum(int r);

// Ledger of the limiting null distribution of the two-sample A^2,
//   A^2_inf = sum_j W_j / (j (j+1)),  W_j ~ chi^2_1 i.i.d.,
// whose r-th cumulant is 2^(r-1) (r-1)! series_sum(r).
CumulantLedger cumulants();

PearsonDistribution pearson_fit(const CumulantLedger& ledger);

// Upper (1 - alpha) quantile of the Pearson curve matched to the ledger.
double pearson_quantile(const CumulantLedger& ledger, double alpha);

// One draw of the series truncated at j_max. Deterministic in the seed.
double sample_a2_infinity(std::size_t j_max, std::uint64_t seed);

// `count` draws; draw k depends only on (seed, k), not on the thread count.
std::vector<double> sample_a2_infinity_batch(std::size_t count,
                                             std::size_t j_max,
                                             std::uint64_t seed,
                                             Parallelism par = {});

// Empirical upper (1 - alpha) quantile of `draws` (order statistic
// ceil((1 - alpha) * N), 1-based). Reorders the input.
double empirical_upper_quantile(std::vector<double>& draws, double alpha);

enum class ThresholdMethod { pearson_fit, monte_carlo, paper_constant };

const char* to_string(ThresholdMethod method);

struct MonteCarloCheck {
  std::size_t draws = 0;
  std::size_t j_max = kDefaultJMax;
  std::uint64_t seed = 0;
  double quantile = 0.0;
  double discrepancy = 0.0;  // quantile - tau_a
};

struct ThresholdSpec {
  double alpha = kCanonicalAlpha;
  double tau_t = kCanonicalTauT;
  double tau_a = kCanonicalTauA;
  CumulantLedger ledger;
  ThresholdMethod method = ThresholdMethod::pearson_fit;
  PearsonType pearson_type = PearsonType::VI;
  double pearson_criterion = 0.0;
  std::optional<MonteCarloCheck> mc_check;
};

bool is_canonical_alpha(double alpha);

// tau_t from the normal quantile of 1 - alpha/2 (pinned to 4.5 at the
// canonical alpha) and tau_a from the Pearson fit. With `mc_draws` set and
// alpha >= 1e-4, the Pearson value is cross-checked against a Monte Carlo
// quantile of the truncated series.
ThresholdSpec derive_thresholds(double alpha,
                                std::optional<std::size_t> mc_draws = {},
                                std::uint64_t mc_seed = 1,
                                Parallelism par = {});

// tau_a taken directly from a Monte Carlo quantile.
ThresholdSpec derive_thresholds_monte_carlo(double alpha, std::size_t draws,
                                            std::uint64_t seed,
                                            std::size_t j_max = kDefaultJMax,
                                            Parallelism par = {});

// The published constants, tau_t = 4.5 and tau_a = 11.99.
ThresholdSpec canonical_thresholds();

// Throws DomainError unless 0 < alpha < 1 and both thresholds are positive.
void validate(const ThresholdSpec& spec);

}  // namespace adla

#endif  // ADLA_THRESHOLD_HPP
