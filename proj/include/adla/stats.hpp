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

#ifndef ADLA_STATS_HPP
#define ADLA_STATS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace adla {

struct WelchResult {
  double t = 0.0;
  double mean_x = 0.0;
  double mean_y = 0.0;
  double var_x = 0.0;  // unbiased, n - 1 divisor
  double var_y = 0.0;
  // Both variances are zero. t is then 0 for equal means and +/-inf
  // otherwise.
  bool degenerate = false;
};

struct AdResult {
  double a2 = 0.0;
  std::size_t n = 0;
};

// Welch's t for two equal-length samples (n >= 2). Means and variances use
// a corrected two-pass scheme centred on each column mean.
WelchResult welch_t(std::span<const double> x, std::span<const double> y);

// Reusable sort buffers for ad_statistic; one per worker thread.
struct AdWorkspace {
  std::vector<double> xs;
  std::vector<double> ys;
};

// Two-sample Anderson-Darling A^2 for equal-length samples (n >= 1):
//
//   A^2 = 1/n^2 * sum_{i=1}^{2n-1} (2n M_i - n i)^2 / (i (2n - i))
//
// where M_i counts x-values <= Z_(i), the i-th smallest pooled value. Ties
// are counted literally with <=, so the result depends only on the sorted
// values and is deterministic.
AdResult ad_statistic(std::span<const double> x, std::span<const double> y);
AdResult ad_statistic(std::span<const double> x, std::span<const double> y,
                      AdWorkspace& ws);

// Standard normal CDF via erfc; absolute error well under 1e-12.
double normal_cdf(double z);
// Upper tail 1 - normal_cdf(z) without cancellation.
double normal_sf(double z);
// Inverse of normal_cdf on (0, 1); throws DomainError outside.
double normal_quantile(double p);

struct QqPoint {
  double theoretical = 0.0;
  double empirical = 0.0;
};

// Normal Q-Q pairs: k-th smallest value against Phi^-1((k - 0.5) / n).
std::vector<QqPoint> qq_points(std::span<const double> values);

struct QqFit {
  double slope = 0.0;
  double intercept = 0.0;
  // sqrt(RSS / TSS) of the least-squares line, i.e. sqrt(1 - r^2). Near 0
  // for normal data, 0 for a flat (constant) input.
  double relative_residual = 0.0;
};

QqFit fit_qq_line(std::span<const QqPoint> points);

}  // namespace adla

#endif  // ADLA_STATS_HPP
