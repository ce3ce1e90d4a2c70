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

#include "adla/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/random/normal_distribution.hpp>

#include "adla/error.hpp"
#include "adla/rng.hpp"
#include "adla/stats.hpp"

namespace adla {
namespace {

constexpr std::size_t kDrawsPerStream = 1024;

std::vector<double> series_weights(std::size_t j_max) {
  std::vector<double> w(j_max);
  for (std::size_t j = 1; j <= j_max; ++j) {
    const double fj = static_cast<double>(j);
    w[j - 1] = 1.0 / (fj * (fj + 1.0));
  }
  return w;
}

double draw_series(Rng& rng, const std::vector<double>& weights) {
  boost::random::normal_distribution<double> normal;
  double sum = 0.0;
  for (double w : weights) {
    const double z = normal(rng);
    sum += w * z * z;
  }
  return sum;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw DomainError("alpha must lie in (0, 0.5)");
  }
}

}  // namespace

CumulantLedger ledger_from_cumulants(double k1, double k2, double k3,
                                     double k4) {
  CumulantLedger l;
  l.kappa = {k1, k2, k3, k4};
  l.mu = {k1, k2, k3, k4 + 3.0 * k2 * k2};
  l.gamma1 = l.mu[2] / std::pow(l.mu[1], 1.5);
  l.gamma2 = l.mu[3] / (l.mu[1] * l.mu[1]);
  return l;
}

double series_sum(int r) {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  switch (r) {
    case 1: return 1.0;
    case 2: return pi2 / 3.0 - 3.0;
    case 3: return 10.0 - pi2;
    case 4: return pi2 * pi2 / 45.0 + 10.0 * pi2 / 3.0 - 35.0;
    default: throw DomainError("series_sum defined for r in 1..4");
  }
}

CumulantLedger cumulants() {
  // kappa_r = 2^(r-1) (r-1)! S_r
  return ledger_from_cumulants(series_sum(1), 2.0 * series_sum(2),
                               8.0 * series_sum(3), 48.0 * series_sum(4));
}

PearsonDistribution pearson_fit(const CumulantLedger& ledger) {
  return PearsonDistribution::fit(
      {ledger.mu[0], ledger.mu[1], ledger.gamma1, ledger.gamma2});
}

double pearson_quantile(const CumulantLedger& ledger, double alpha) {
  check_alpha(alpha);
  return pearson_fit(ledger).upper_quantile(alpha);
}

double sample_a2_infinity(std::size_t j_max, std::uint64_t seed) {
  if (j_max == 0) throw DomainError("j_max must be >= 1");
  Rng rng(seed, 0);
  return draw_series(rng, series_weights(j_max));
}

std::vector<double> sample_a2_infinity_batch(std::size_t count,
                                             std::size_t j_max,
                                             std::uint64_t seed,
                                             Parallelism par) {
  if (j_max == 0) throw DomainError("j_max must be >= 1");
  const auto weights = series_weights(j_max);
  std::vector<double> out(count);
  parallel_for(count, kDrawsPerStream, par,
               [&](std::size_t begin, std::size_t end, unsigned) {
                 Rng rng(seed, begin / kDrawsPerStream);
                 for (std::size_t k = begin; k < end; ++k) {
                   out[k] = draw_series(rng, weights);
                 }
               });
  return out;
}

double empirical_upper_quantile(std::vector<double>& draws, double alpha) {
  if (draws.empty()) throw DomainError("no draws");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1)");
  }
  const double n = static_cast<double>(draws.size());
  auto rank = static_cast<std::size_t>(std::ceil((1.0 - alpha) * n));
  rank = std::clamp<std::size_t>(rank, 1, draws.size());
  auto nth = draws.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(draws.begin(), nth, draws.end());
  return *nth;
}

const char* to_string(ThresholdMethod method) {
  switch (method) {
    case ThresholdMethod::pearson_fit: return "pearson_fit";
    case ThresholdMethod::monte_carlo: return "monte_carlo";
    case ThresholdMethod::paper_constant: return "paper_constant";
  }
  return "?";
}

bool is_canonical_alpha(double alpha) {
  return std::abs(alpha - kCanonicalAlpha) <= 1e-12 * kCanonicalAlpha;
}

namespace {

double tvla_threshold(double alpha) {
  return is_canonical_alpha(alpha) ? kCanonicalTauT
                                   : normal_quantile(1.0 - alpha / 2.0);
}

}  // namespace

ThresholdSpec derive_thresholds(double alpha,
                                std::optional<std::size_t> mc_draws,
                                std::uint64_t mc_seed, Parallelism par) {
  check_alpha(alpha);
  ThresholdSpec spec;
  spec.alpha = alpha;
  spec.ledger = cumulants();
  spec.method = ThresholdMethod::pearson_fit;
  spec.tau_t = tvla_threshold(alpha);
  const auto fit = pearson_fit(spec.ledger);
  spec.pearson_type = fit.type();
  spec.pearson_criterion = fit.criterion();
  spec.tau_a = fit.upper_quantile(alpha);

  if (mc_draws && *mc_draws > 0 && alpha >= 1e-4) {
    auto draws = sample_a2_infinity_batch(*mc_draws, kDefaultJMax, mc_seed, par);
    MonteCarloCheck check;
    check.draws = *mc_draws;
    check.j_max = kDefaultJMax;
    check.seed = mc_seed;
    check.quantile = empirical_upper_quantile(draws, alpha);
    check.discrepancy = check.quantile - spec.tau_a;
    spec.mc_check = check;
  }
  return spec;
}

ThresholdSpec derive_thresholds_monte_carlo(double alpha, std::size_t draws,
                                            std::uint64_t seed,
                                            std::size_t j_max,
                                            Parallelism par) {
  check_alpha(alpha);
  if (draws == 0) throw DomainError("Monte Carlo threshold needs draws > 0");
  ThresholdSpec spec;
  spec.alpha = alpha;
  spec.ledger = cumulants();
  spec.method = ThresholdMethod::monte_carlo;
  spec.tau_t = tvla_threshold(alpha);
  const auto fit = pearson_fit(spec.ledger);
  spec.pearson_type = fit.type();
  spec.pearson_criterion = fit.criterion();
  auto sample = sample_a2_infinity_batch(draws, j_max, seed, par);
  spec.tau_a = empirical_upper_quantile(sample, alpha);
  spec.mc_check = MonteCarloCheck{draws, j_max, seed, spec.tau_a, 0.0};
  return spec;
}

ThresholdSpec canonical_thresholds() {
  ThresholdSpec spec;
  spec.alpha = kCanonicalAlpha;
  spec.tau_t = kCanonicalTauT;
  spec.tau_a = kCanonicalTauA;
  spec.ledger = cumulants();
  spec.method = ThresholdMethod::paper_constant;
  const auto fit = pearson_fit(spec.ledger);
  spec.pearson_type = fit.type();
  spec.pearson_criterion = fit.criterion();
  return spec;
}

void validate(const ThresholdSpec& spec) {
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) {
    throw DomainError("threshold alpha must lie in (0, 1)");
  }
  if (!(spec.tau_t > 0.0) || !(spec.tau_a > 0.0)) {
    throw DomainError("thresholds must be positive");
  }
}

}  // namespace adla
